#include "lsl/quadrature.hpp"

#include <cmath>

namespace lsl {

WeightedIntegral integrate(std::span<const SurfacePoint> points, const Integrand& g,
                           const GaussianFrame* frame) {
  if (points.empty()) throw std::invalid_argument("integrate: empty sample set");
  if (frame && frame->scale <= 0.0)
    throw std::invalid_argument("integrate: frame scale must be positive");
  std::vector<Scalar> contrib(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const SurfacePoint& p = points[i];
    Scalar v = g(p);
    if (frame) {
      const Scalar d2 = (p.position - frame->center).squaredNorm();
      v *= std::exp(-d2 / (2.0 * frame->scale));
    }
    contrib[i] = v * p.area_weight;
  });
  for (std::size_t i = 0; i < contrib.size(); ++i) {
    if (!std::isfinite(contrib[i]))
      throw std::domain_error("integrate: non-finite integrand at sample " + std::to_string(i));
  }
  return {pairwise_sum(contrib), 0.0};
}

WeightedIntegral integrate_with_error(const SurfaceDescriptor& desc, const QuadratureSpec& spec,
                                      const Integrand& g, const GaussianFrame* frame) {
  const auto fine = sample_surface(desc, spec);
  const auto coarse = sample_surface(desc, spec.halved());
  const Scalar vf = integrate(fine, g, frame).value;
  const Scalar vc = integrate(coarse, g, frame).value;
  return {vf, std::abs(vf - vc)};
}

Scalar sphere_moment(int n, Scalar r, int degree, const Vector& z) {
  if (n < 1 || r <= 0.0) throw std::invalid_argument("sphere_moment: need n >= 1, r > 0");
  const Scalar area = unit_sphere_area(n) * std::pow(r, n);
  switch (degree) {
    case 0: return area;
    case 1: return 0.0;
    case 2:
      if (z.size() == 0) throw std::invalid_argument("sphere_moment: degree 2 needs z");
      return z.squaredNorm() * area / (n + 1.0);
    default:
      throw std::invalid_argument("sphere_moment: unsupported degree " + std::to_string(degree) +
                                  " (supported: 0, 1, 2)");
  }
}

Scalar integration_by_parts_residual(std::span<const SurfacePoint> points, const SurfaceField& u,
                                     const SurfaceField& v) {
  if (points.empty())
    throw std::invalid_argument("integration_by_parts_residual: empty sample set");
  const GaussianFrame frame = GaussianFrame::standard(static_cast<int>(points[0].position.size()));
  const Scalar lhs =
      integrate(points, [&](const SurfacePoint& p) { return u.value(p) * drift_laplacian(v, p); },
                &frame)
          .value;
  const Scalar rhs =
      integrate(points, [&](const SurfacePoint& p) { return u.gradient(p).dot(v.gradient(p)); },
                &frame)
          .value;
  return std::abs(lhs + rhs);
}

}  // namespace lsl
