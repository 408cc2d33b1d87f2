#pragma once

#include "lsl/variations.hpp"

namespace lsl {

enum class StabilityMode { F, Weak };
enum class Verdict { Stable, Unstable };

/// Classification of a round sphere. The certificate is the minimum of the
/// reduced quadratic form over the searched mode family, with each mode
/// normalized to int f^2 w dmu = 1; verdicts use certificate >= -1e-10
/// (ties classify as stable).
struct StabilityVerdict {
  StabilityMode mode = StabilityMode::F;
  int n = 0;
  Scalar r = 0.0;
  Verdict verdict = Verdict::Stable;
  std::optional<SphereVariation> witness;  // present when unstable
  Scalar certificate = 0.0;
  std::string witness_kind;  // "", "z-mode", "f0:k"
};

/// Closed-form stability thresholds for S^n(r).
struct ThresholdSet {
  Scalar f_lower = 0.0;     // sqrt(n)
  Scalar f_upper = 0.0;     // sqrt(n+1)
  Scalar weak_lower = 0.0;  // (-1 + sqrt(1+4n)) / 2
  Scalar weak_upper = 0.0;  // (1 + sqrt(1+4n)) / 2

  static ThresholdSet for_dimension(int n);
};

/// F-stability: for each normal mode, maximize the second variation over the
/// responses (h for the constant block, y = k z for the degree-1 block); the
/// sphere is stable iff the resulting minimum is >= 0. Agrees with the
/// closed-form rule: stable iff r <= sqrt(n) or r > sqrt(n+1).
StabilityVerdict classify_F(int n, Scalar r, int k_max = 8);

/// Weak stability: minimize T'' over volume-preserving modes (degree-1 and
/// f0); stable iff r <= (-1+sqrt(1+4n))/2 or r >= (1+sqrt(1+4n))/2.
StabilityVerdict classify_weak(int n, Scalar r, int k_max = 8);

struct ScanRow {
  Scalar r = 0.0;
  Verdict verdict = Verdict::Stable;
  Scalar certificate = 0.0;
  std::string witness_kind;
};

std::vector<ScanRow> threshold_scan(int n, Scalar r_min, Scalar r_max, Scalar step,
                                    StabilityMode mode);

/// Verdict transitions of a scan: radii where the verdict changes between
/// consecutive grid points (midpoint of the bracketing pair).
std::vector<Scalar> scan_transitions(std::span<const ScanRow> rows);

struct SpectralRow {
  int k = 0;
  Scalar mu_k = 0.0;        // (k^2 + (n-1)k) / r^2
  Scalar coefficient = 0.0; // mu_k - n/r^2 - 1 + lambda^2
};

std::vector<SpectralRow> spectral_table(int n, Scalar r, int k_max);

/// Lower bound ((r^2 - n - 1/2)^2 + 7/4) / r^2 for the k >= 2 coefficients.
Scalar f0_coefficient_bound(int n, Scalar r);

}  // namespace lsl
