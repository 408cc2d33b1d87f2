#pragma once

#include "lsl/surface.hpp"

namespace lsl {

struct WeightedIntegral {
  Scalar value = 0.0;
  Scalar estimated_error = 0.0;
};

using Integrand = std::function<Scalar(const SurfacePoint&)>;

/// Integral of g dmu, or of g e^{-|X - X0|^2 / (2 t0)} dmu when a frame is
/// given. Sample contributions are reduced with pairwise summation, so the
/// value is independent of the thread count.
WeightedIntegral integrate(std::span<const SurfacePoint> points, const Integrand& g,
                           const GaussianFrame* frame = nullptr);

/// Same, with the estimated_error taken from a half-resolution re-sampling.
WeightedIntegral integrate_with_error(const SurfaceDescriptor& desc, const QuadratureSpec& spec,
                                      const Integrand& g, const GaussianFrame* frame = nullptr);

/// Closed-form moments of <z,N>^degree over S^n(r):
/// degree 0 -> omega_n r^n, degree 1 -> 0, degree 2 -> |z|^2 omega_n r^n / (n+1).
Scalar sphere_moment(int n, Scalar r, int degree, const Vector& z = Vector());

/// | int u (Lv) w dmu + int <grad u, grad v> w dmu | with w = e^{-|X|^2/2};
/// vanishes to quadrature accuracy for compact surfaces (and for cylinders,
/// where the Gaussian weight supplies the integrability).
Scalar integration_by_parts_residual(std::span<const SurfacePoint> points, const SurfaceField& u,
                                     const SurfaceField& v);

}  // namespace lsl
