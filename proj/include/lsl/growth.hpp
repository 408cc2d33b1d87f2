#pragma once

#include "lsl/quadrature.hpp"

namespace lsl {

/// Area(B_r(0) ∩ X(M)), closed form for canonical descriptors: cylinder
/// omega_k r0^k V_{n-k} (r^2 - r0^2)_+^{(n-k)/2}, plane V_n r^n, sphere
/// (full area for r >= rho, zero below). Curves use polyline-ball
/// intersection length (clipped segments).
Scalar area_in_ball(const SurfaceDescriptor& desc, Scalar r);

struct GrowthProfile {
  std::vector<Scalar> radii;
  std::vector<Scalar> areas;
  Scalar fitted_exponent = 0.0;  // log-log least squares over the top half
  Scalar bound_exponent = 0.0;   // n + lambda^2/2 - 2 beta - inf(H^2)/2
};

GrowthProfile growth_exponent(const SurfaceDescriptor& desc, Scalar r_min, Scalar r_max,
                              int samples);

struct AnnulusReport {
  std::vector<int> t;
  std::vector<Scalar> ratio;     // (Area(B_{t+1}) - Area(B_t)) * t / Area(B_t)
  std::vector<bool> doubling;    // Area(B_{t+1}) <= 2 Area(B_t)
  std::vector<bool> valid;       // Area(B_t) > 0
  Scalar max_ratio = 0.0;        // over valid rows
};

AnnulusReport annulus_check(const SurfaceDescriptor& desc, int t_min, int t_max);

struct LinearLowerBound {
  Scalar slope = 0.0;            // least-squares slope of area vs r over the tail
  Scalar min_area_over_r = 0.0;  // min over the grid of Area(B_r)/r
  bool pass = false;
};

LinearLowerBound linear_lower_bound_check(const SurfaceDescriptor& desc, Scalar r_min,
                                          Scalar r_max, int samples);

struct LogSobolevCase {
  std::string name;
  Scalar lhs = 0.0;          // int f^2 ln f w dmu (f normalized to int f^2 w = 1)
  Scalar gradient_term = 0.0;  // int |grad f|^2 w dmu
  Scalar lambda_term = 0.0;    // lambda^2 / 4
  Scalar required_c1 = 0.0;    // 2 (lhs - gradient_term - lambda_term)
  Scalar margin = 0.0;         // rhs - lhs at the reported minimal C1
};

struct LogSobolevReport {
  std::vector<LogSobolevCase> cases;
  Scalar minimal_c1 = 0.0;  // smallest C1(n) making every battery case pass
};

struct NamedField {
  std::string name;
  SurfaceField field;
};

/// Corollary form of the log-Sobolev inequality:
///   int f^2 ln f w dmu <= int |grad f|^2 w dmu + C1(n)/2 + lambda^2/4
/// for f >= 0 normalized to int f^2 w dmu = 1. C1(n) is inverted from the
/// battery (the paper provides no numeric constant).
LogSobolevReport log_sobolev_check(const SampledSurface& surface, const LambdaParams& params,
                                   std::span<const NamedField> battery);

/// Standard positive f battery with analytic gradients on spheres/circles:
/// constant, 1 + <z,N>/2, exp(<z,N>/2).
std::vector<NamedField> standard_log_sobolev_battery(const SurfaceDescriptor& desc);

}  // namespace lsl
