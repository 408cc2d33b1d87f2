#pragma once

#include "lsl/quadrature.hpp"

namespace lsl {

struct FunctionalValue {
  Scalar f_value = 0.0;  // F = weighted area + lambda (4 pi t0)^{-n/2} weighted volume
  Scalar t_value = 0.0;  // T = Gaussian-weighted area term
  Scalar v_value = 0.0;  // V = weighted volume
};

struct IdentityReport {
  std::string name;
  Scalar residual = 0.0;
  Scalar tolerance = 0.0;
  bool pass = false;
};

/// (4 pi t0)^{-n/2} int e^{-|X-X0|^2/(2 t0)} dmu.
Scalar weighted_area(const SampledSurface& surface, const GaussianFrame& frame);

/// int <X - X0, N> e^{-|X-X0|^2/(2 t0)} dmu.
Scalar weighted_volume(const SampledSurface& surface, const GaussianFrame& frame);

FunctionalValue f_functional(const SampledSurface& surface, const GaussianFrame& frame,
                             const LambdaParams& params);

/// Pointwise residuals (sup norm over samples and basis directions) of
///   L<X,a> = lambda <N,a> - <X,a>
///   L<N,a> = -S <N,a>
///   L(|X|^2)/2 = n - |X|^2 + lambda <X,N>
/// on a lambda-hypersurface with analytic derivatives.
std::vector<IdentityReport> drift_identity_residuals(const SurfaceDescriptor& desc,
                                                     const LambdaParams& params,
                                                     const QuadratureSpec& spec = {},
                                                     Scalar tolerance = 1e-8);

/// Normalized residuals of the five weighted integral identities of a
/// lambda-hypersurface (w = e^{-|X|^2/2} dmu):
///   int (<X,a> - lambda <N,a>) w = 0
///   int (n - |X|^2 + lambda <X,N>) w = 0
///   int <X,a>|X|^2 w = int (2 n lambda <N,a> + 2 lambda <X,a>(lambda-H) - lambda <N,a>|X|^2) w
///   int <X,a>^2 w = int (|a^T|^2 + lambda <N,a><X,a>) w
///   int (|X|^2 - n - lambda(lambda-H)/2)^2 w = int ((lambda^2/4 - 1)(lambda-H)^2 + 2n - H^2 + lambda^2) w
/// Residuals are divided by max(1, largest constituent term).
std::vector<IdentityReport> integral_identity_residuals(const SurfaceDescriptor& desc,
                                                        const LambdaParams& params,
                                                        const QuadratureSpec& spec = {},
                                                        Scalar tolerance = 1e-6);

}  // namespace lsl
