#include "lsl/stability.hpp"

#include <cmath>

namespace lsl {

namespace {

constexpr Scalar kStableTolerance = 1e-10;
constexpr Scalar kResponseProbe = 10.0;  // generic probes for the y = k z response

// Normalization so that int f^2 w dmu = 1 for a unit z-mode / unit f0 mode.
struct SphereMoments {
  Scalar area, deg2, weight;
  SphereMoments(int n, Scalar r)
      : area(unit_sphere_area(n) * std::pow(r, n)),
        deg2(area / (n + 1.0)),
        weight(std::exp(-0.5 * r * r)) {}
};

// Quadratic form value for the degree-1 mode (|z| = 1) with response y = k z,
// normalized by int <z,N>^2 w dmu. Evaluated through second_variation_F so
// the scan exercises the actual Theorem 3.1 expression.
Scalar z_mode_value(int n, Scalar r, Scalar k) {
  SphereVariation var;
  var.z = Vector::Zero(n + 1);
  var.z(0) = 1.0;
  var.k = k;
  const LambdaParams params{n / r - r, n};
  const SphereMoments m(n, r);
  return second_variation_F(SphereDesc{n, r}, params, var).value / (m.deg2 * m.weight);
}

Scalar a_mode_value(int n, Scalar r, Scalar h) {
  SphereVariation var;
  var.a = 1.0;
  var.h = h;
  const LambdaParams params{n / r - r, n};
  const SphereMoments m(n, r);
  return second_variation_F(SphereDesc{n, r}, params, var).value / (m.area * m.weight);
}

Scalar f0_mode_value(int n, Scalar r, int degree) {
  SphereVariation var;
  HarmonicField mode;
  mode.degree = degree;
  mode.norm_sq = 1.0;  // abstract unit-norm mode; only degree and norm enter
  var.f0.push_back({mode, 1.0});
  const LambdaParams params{n / r - r, n};
  const SphereMoments m(n, r);
  return second_variation_F(SphereDesc{n, r}, params, var).value / m.weight;
}

}  // namespace

ThresholdSet ThresholdSet::for_dimension(int n) {
  ThresholdSet t;
  t.f_lower = std::sqrt(static_cast<Scalar>(n));
  t.f_upper = std::sqrt(static_cast<Scalar>(n + 1));
  t.weak_lower = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * n));
  t.weak_upper = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * n));
  return t;
}

StabilityVerdict classify_F(int n, Scalar r, int k_max) {
  if (n < 1 || r <= 0.0) throw std::invalid_argument("classify_F: need n >= 1, r > 0");
  StabilityVerdict out;
  out.mode = StabilityMode::F;
  out.n = n;
  out.r = r;

  // Constant block: the optimal scale response h = -2a/r cancels it exactly.
  const Scalar a_cert = a_mode_value(n, r, -2.0 / r);

  // Degree-1 block: the form is quadratic in the response k; recover the
  // parabola from three evaluations of the actual Theorem 3.1 expression.
  const Scalar v0 = z_mode_value(n, r, 0.0);
  const Scalar v1 = z_mode_value(n, r, 1.0);
  const Scalar v2 = z_mode_value(n, r, 2.0);
  const Scalar quad = 0.5 * (v2 - 2.0 * v1 + v0);
  const Scalar lin = v1 - v0 - quad;
  Scalar best_k = 0.0, best_v = -std::numeric_limits<Scalar>::infinity();
  auto consider = [&](Scalar k) {
    const Scalar v = v0 + lin * k + quad * k * k;
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  };
  consider(-kResponseProbe);
  consider(kResponseProbe);
  consider(1.0);
  consider(2.0);
  if (quad < 0.0) consider(-lin / (2.0 * quad));
  // When 1 + lambda r < 0 the parabola opens upward and the admissible k is
  // unbounded; (1-k)^2 = lambda(lambda+r)/(1+lambda r) + 1 already gives a
  // positive value, so scale the response adaptively instead of capping it.
  const Scalar lambda = n / r - r;
  const Scalar one_plus_lr = 1.0 + lambda * r;
  if (one_plus_lr < 0.0) {
    const Scalar ratio = lambda * (lambda + r) / one_plus_lr;
    consider(1.0 + std::sqrt(std::max(0.0, ratio) + 1.0));
  }
  const Scalar z_cert = z_mode_value(n, r, best_k);

  // f0 block (degree >= 2): no response couples; the coefficient is the
  // certificate and is increasing in the degree.
  Scalar f0_cert = std::numeric_limits<Scalar>::infinity();
  int f0_degree = 2;
  for (int k = 2; k <= std::max(2, k_max); ++k) {
    const Scalar v = f0_mode_value(n, r, k);
    if (v < f0_cert) {
      f0_cert = v;
      f0_degree = k;
    }
  }

  out.certificate = std::min({a_cert, z_cert, f0_cert});
  out.verdict = out.certificate >= -kStableTolerance ? Verdict::Stable : Verdict::Unstable;
  if (out.verdict == Verdict::Unstable) {
    SphereVariation witness;
    const SphereMoments m(n, r);
    if (z_cert <= std::min(a_cert, f0_cert)) {
      witness.z = Vector::Zero(n + 1);
      witness.z(0) = 1.0 / std::sqrt(m.deg2 * m.weight);
      witness.k = best_k;
      out.witness_kind = "z-mode";
    } else {
      HarmonicField mode;
      mode.degree = f0_degree;
      mode.norm_sq = 1.0 / m.weight;
      witness.f0.push_back({mode, 1.0});
      out.witness_kind = "f0:" + std::to_string(f0_degree);
    }
    out.witness = std::move(witness);
  }
  return out;
}

StabilityVerdict classify_weak(int n, Scalar r, int k_max) {
  if (n < 1 || r <= 0.0) throw std::invalid_argument("classify_weak: need n >= 1, r > 0");
  StabilityVerdict out;
  out.mode = StabilityMode::Weak;
  out.n = n;
  out.r = r;
  const SphereMoments m(n, r);
  const SphereDesc sphere{n, r};

  SphereVariation zvar;
  zvar.z = Vector::Zero(n + 1);
  zvar.z(0) = 1.0;
  const Scalar z_cert = second_variation_T_sphere(sphere, zvar) / (m.deg2 * m.weight);

  Scalar f0_cert = std::numeric_limits<Scalar>::infinity();
  int f0_degree = 2;
  for (int k = 2; k <= std::max(2, k_max); ++k) {
    SphereVariation fvar;
    HarmonicField mode;
    mode.degree = k;
    mode.norm_sq = 1.0;
    fvar.f0.push_back({mode, 1.0});
    const Scalar v = second_variation_T_sphere(sphere, fvar) / m.weight;
    if (v < f0_cert) {
      f0_cert = v;
      f0_degree = k;
    }
  }

  out.certificate = std::min(z_cert, f0_cert);
  out.verdict = out.certificate >= -kStableTolerance ? Verdict::Stable : Verdict::Unstable;
  if (out.verdict == Verdict::Unstable) {
    SphereVariation witness;
    if (z_cert <= f0_cert) {
      witness.z = Vector::Zero(n + 1);
      witness.z(0) = 1.0 / std::sqrt(m.deg2 * m.weight);
      out.witness_kind = "z-mode";
    } else {
      HarmonicField mode;
      mode.degree = f0_degree;
      mode.norm_sq = 1.0 / m.weight;
      witness.f0.push_back({mode, 1.0});
      out.witness_kind = "f0:" + std::to_string(f0_degree);
    }
    out.witness = std::move(witness);
  }
  return out;
}

std::vector<ScanRow> threshold_scan(int n, Scalar r_min, Scalar r_max, Scalar step,
                                    StabilityMode mode) {
  if (!(0.0 < r_min && r_min < r_max) || step <= 0.0)
    throw std::invalid_argument("threshold_scan: need 0 < r_min < r_max and step > 0");
  const std::size_t count = static_cast<std::size_t>(std::floor((r_max - r_min) / step)) + 1;
  std::vector<ScanRow> rows(count);
  parallel_for(count, [&](std::size_t i) {
    const Scalar r = r_min + i * step;
    const StabilityVerdict v =
        mode == StabilityMode::F ? classify_F(n, r) : classify_weak(n, r);
    rows[i] = {r, v.verdict, v.certificate, v.witness_kind};
  });
  return rows;
}

std::vector<Scalar> scan_transitions(std::span<const ScanRow> rows) {
  std::vector<Scalar> out;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].verdict != rows[i - 1].verdict)
      out.push_back(0.5 * (rows[i - 1].r + rows[i].r));
  return out;
}

std::vector<SpectralRow> spectral_table(int n, Scalar r, int k_max) {
  if (k_max < 2) throw std::invalid_argument("spectral_table: k_max must be >= 2");
  const Scalar lambda = n / r - r;
  const Scalar S = n / (r * r);
  std::vector<SpectralRow> rows;
  rows.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    const Scalar mu = sphere_laplace_eigenvalue(n, r, k);
    rows.push_back({k, mu, mu - S - 1.0 + lambda * lambda});
  }
  return rows;
}

Scalar f0_coefficient_bound(int n, Scalar r) {
  const Scalar q = r * r - n - 0.5;
  return (q * q + 1.75) / (r * r);
}

}  // namespace lsl
