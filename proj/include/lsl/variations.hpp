#pragma once

#include "lsl/functionals.hpp"

namespace lsl {

/// Variation data (f, y, h): normal speed, velocity of the Gaussian center,
/// velocity of the Gaussian scale.
struct VariationData {
  std::function<Scalar(const SurfacePoint&)> normal_speed;
  Vector base_velocity;        // y
  Scalar scale_velocity = 0.0; // h
};

/// F'(0) for the variation (f, y, h) at frame (X0, t0):
///   (4 pi t0)^{-n/2} [ int (lambda - H - <(X-X0)/t0, N>) f w
///                    + int (<(X-X0)/t0, y> - lambda <N,y>) w
///                    + int (|X-X0|^2/t0 - n - lambda <X-X0,N>) h/(2 t0) w ],
/// w = e^{-|X-X0|^2/(2 t0)} dmu.
Scalar first_variation(const SampledSurface& surface, const GaussianFrame& frame,
                       const LambdaParams& params, const VariationData& var);

/// Sphere-specific decomposition f = f0 + a + <z,N> with y = k z.
/// f0 is a combination of harmonic modes of degree >= 2.
struct SphereVariation {
  struct Mode {
    HarmonicField harmonic;
    Scalar amplitude = 0.0;
  };
  std::vector<Mode> f0;
  Scalar a = 0.0;
  Vector z;       // empty means 0
  Scalar k = 0.0; // y = k z
  Scalar h = 0.0;
};

struct QuadraticFormValue {
  Scalar value = 0.0;  // (4 pi)^{n/2} F''(0)
  std::vector<std::pair<std::string, Scalar>> term_breakdown;
};

/// Second variation of F at the critical sphere S^n(r) (lambda = n/r - r,
/// frame (0,1)), evaluated with closed-form sphere moments; the -f L f term
/// decomposes over harmonic modes with coefficient mu_k - S - 1 + lambda^2.
QuadraticFormValue second_variation_F(const SphereDesc& sphere, const LambdaParams& params,
                                      const SphereVariation& var);

/// (4 pi)^{n/2} T''(0) = int -f (Lf + (S + 1 - lambda^2) f) w dmu by quadrature
/// on a critical surface; requires the volume-preserving constraint
/// int f w dmu = 0 (within 1e-8 relative to int w dmu).
Scalar second_variation_T(const SampledSurface& surface, const LambdaParams& params,
                          const SurfaceField& f);

/// Spectral route of T'' on the sphere (f = f0 + <z,N>, no constant part).
Scalar second_variation_T_sphere(const SphereDesc& sphere, const SphereVariation& var);

/// F(s) along a one-parameter deformation family. Families used for
/// finite-difference checks keep the velocity purely normal through second
/// order: X(s) = X + s f N - (s^2/2) f grad f + O(s^3), so the Lagrangian
/// volume term sees the same jet the variation formulas assume.
struct DeformationFamily {
  std::string name;
  std::function<Scalar(Scalar)> f_of_s;
};

/// Trigonometric polynomial a0 + sum_k (c_k cos k t + s_k sin k t).
struct TrigPoly {
  Scalar a0 = 0.0;
  std::vector<Scalar> cos_coeffs;
  std::vector<Scalar> sin_coeffs;

  Scalar eval(Scalar t) const;
  Scalar deriv(Scalar t) const;
  Scalar deriv2(Scalar t) const;
};

/// Deformed circle family: X(theta, s) = (r - s f) u - (s^2/2)(f f'/r) u_theta
/// with Gaussian frame motion X_s = s y, t_s = t0 + s h.
DeformationFamily circle_deformation(Scalar r, const LambdaParams& params, const TrigPoly& f,
                                     const Eigen::Vector2d& y, Scalar h, Scalar t0 = 1.0,
                                     int resolution = 4096);

/// Deformed sphere family for n = 2 with f = a + <z,N>; area elements come
/// from the exact differential of the second-order jet map.
DeformationFamily sphere_deformation(const SphereDesc& sphere, const LambdaParams& params,
                                     Scalar a, const Vector& z, const Vector& y, Scalar h,
                                     Scalar t0 = 1.0, int polar = 48, int azimuth = 96);

/// Displaced-polyline family (first-variation checks on discrete curves).
DeformationFamily polyline_deformation(const CurveDesc& curve, const LambdaParams& params,
                                       const std::function<Scalar(const SurfacePoint&)>& f,
                                       const Eigen::Vector2d& y, Scalar h, Scalar t0 = 1.0);

struct FdReport {
  std::vector<Scalar> steps;
  std::vector<Scalar> fd_values;
  std::vector<Scalar> errors;
  Scalar formula = 0.0;
  Scalar slope = 0.0;          // log-log fit over errors above the noise floor
  bool at_noise_floor = false; // all errors at round-off: agreement better than O(step^2)
  bool converged = false;      // slope >= 1.5 or at the noise floor
};

/// Central difference (F(s) - F(-s)) / (2s) against the first-variation value.
FdReport fd_check_first_variation(const DeformationFamily& family, Scalar formula,
                                  std::span<const Scalar> steps);

/// Second central difference scaled by fd_scale ((4 pi t0)^{n/2} for F'')
/// against the second-variation value.
FdReport fd_check_second_variation(const DeformationFamily& family, Scalar formula,
                                   std::span<const Scalar> steps, Scalar fd_scale);

}  // namespace lsl
