#pragma once

#include "lsl/functionals.hpp"
#include "lsl/variations.hpp"

namespace lsl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

/// Runs the full verification matrix (criticality, finite-difference
/// agreement, stability thresholds, identity suites, flow conservation,
/// growth bounds, log-Sobolev battery). Deterministic at a fixed seed.
std::vector<CriterionResult> run_acceptance_matrix(unsigned seed = 12345);

/// Canonical lambda-hypersurface test matrix: spheres n in {1,2,3} at
/// r in {0.8, 1, 1.6} plus the self-shrinker cylinders (1,2), (1,3), (2,3).
std::vector<std::pair<SurfaceDescriptor, std::string>> canonical_surface_matrix();

struct IdentitySuiteRow {
  std::string surface;
  IdentityReport report;
};

/// Drift (pointwise) and integral identity residuals over the canonical
/// matrix extended with off-shrinker cylinders.
std::vector<IdentitySuiteRow> run_identity_matrix();

struct FdBatteryRow {
  std::string name;
  bool second_order = false;
  FdReport report;
};

/// The finite-difference deformation battery (first and second variation).
std::vector<FdBatteryRow> run_fd_battery();

/// Serialized report {"criteria":[{id,name,pass,details}...],"all_pass":..,
/// "seed":..} with a stable key layout (golden-file tested).
std::string acceptance_report_json(const std::vector<CriterionResult>& criteria, unsigned seed);

}  // namespace lsl
