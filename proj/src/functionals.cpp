#include "lsl/functionals.hpp"

#include <cmath>

namespace lsl {

namespace {

Scalar gaussian_norm(int n, Scalar t0) { return std::pow(4.0 * kPi * t0, -0.5 * n); }

void check_lambda_surface(const SurfaceDescriptor& desc, const LambdaParams& params,
                          const QuadratureSpec& spec, const char* who) {
  const ResidualStats stats = lambda_residual(desc, params, spec);
  if (stats.linf > 1e-8)
    throw std::invalid_argument(std::string(who) +
                                ": surface is not a lambda-hypersurface for the given lambda "
                                "(measured residual " +
                                std::to_string(stats.linf) + ")");
}

}  // namespace

Scalar weighted_area(const SampledSurface& surface, const GaussianFrame& frame) {
  const Scalar integral =
      integrate(surface.points, [](const SurfacePoint&) { return 1.0; }, &frame).value;
  return gaussian_norm(surface.n, frame.scale) * integral;
}

Scalar weighted_volume(const SampledSurface& surface, const GaussianFrame& frame) {
  return integrate(surface.points,
                   [&frame](const SurfacePoint& p) {
                     return (p.position - frame.center).dot(p.normal);
                   },
                   &frame)
      .value;
}

FunctionalValue f_functional(const SampledSurface& surface, const GaussianFrame& frame,
                             const LambdaParams& params) {
  FunctionalValue out;
  out.t_value = weighted_area(surface, frame);
  out.v_value = weighted_volume(surface, frame);
  out.f_value = out.t_value + params.lambda * gaussian_norm(surface.n, frame.scale) * out.v_value;
  return out;
}

std::vector<IdentityReport> drift_identity_residuals(const SurfaceDescriptor& desc,
                                                     const LambdaParams& params,
                                                     const QuadratureSpec& spec,
                                                     Scalar tolerance) {
  check_lambda_surface(desc, params, spec, "drift_identity_residuals");
  const auto points = sample_surface(desc, spec);
  const int n = surface_dim(desc);
  const int ambient = n + 1;
  const Scalar lambda = params.lambda;

  Scalar res1 = 0.0, res2 = 0.0, res3 = 0.0;
  for (int axis = 0; axis < ambient; ++axis) {
    Vector a = Vector::Zero(ambient);
    a(axis) = 1.0;
    const SurfaceField xa = linear_field(a);
    const SurfaceField na = normal_linear_field(desc, a);
    for (const auto& p : points) {
      const Scalar dotna = p.normal.dot(a);
      res1 = std::max(res1,
                      std::abs(drift_laplacian(xa, p) - lambda * dotna + p.position.dot(a)));
      res2 = std::max(res2, std::abs(drift_laplacian(na, p) +
                                     p.second_fundamental_norm_sq * dotna));
    }
  }
  const SurfaceField r2 = radius_sq_field(n);
  for (const auto& p : points) {
    const Scalar xn = p.position.dot(p.normal);
    res3 = std::max(res3, std::abs(0.5 * drift_laplacian(r2, p) -
                                   (n - p.position.squaredNorm() + lambda * xn)));
  }

  auto report = [tolerance](const char* name, Scalar res) {
    return IdentityReport{name, res, tolerance, res <= tolerance};
  };
  return {report("lemma2.1-eq2.1", res1), report("lemma2.1-eq2.2", res2),
          report("lemma2.1-eq2.3", res3)};
}

std::vector<IdentityReport> integral_identity_residuals(const SurfaceDescriptor& desc,
                                                        const LambdaParams& params,
                                                        const QuadratureSpec& spec,
                                                        Scalar tolerance) {
  check_lambda_surface(desc, params, spec, "integral_identity_residuals");
  const auto points = sample_surface(desc, spec);
  const int n = surface_dim(desc);
  const int ambient = n + 1;
  const Scalar lambda = params.lambda;
  const GaussianFrame frame = GaussianFrame::standard(ambient);

  auto wint = [&](const Integrand& g) { return integrate(points, g, &frame).value; };
  auto normalized = [](Scalar lhs, Scalar rhs, std::initializer_list<Scalar> terms) {
    Scalar scale = 1.0;
    for (Scalar t : terms) scale = std::max(scale, std::abs(t));
    return std::abs(lhs - rhs) / scale;
  };

  Scalar res26 = 0.0, res28 = 0.0, res29 = 0.0;
  for (int axis = 0; axis < ambient; ++axis) {
    Vector a = Vector::Zero(ambient);
    a(axis) = 1.0;
    {
      const Scalar t1 = wint([&](const SurfacePoint& p) { return p.position.dot(a); });
      const Scalar t2 = wint([&](const SurfacePoint& p) { return lambda * p.normal.dot(a); });
      res26 = std::max(res26, normalized(t1, t2, {t1, t2}));
    }
    {
      const Scalar lhs =
          wint([&](const SurfacePoint& p) { return p.position.dot(a) * p.position.squaredNorm(); });
      const Scalar rhs = wint([&](const SurfacePoint& p) {
        const Scalar na = p.normal.dot(a), xa = p.position.dot(a);
        return 2.0 * n * lambda * na + 2.0 * lambda * xa * (lambda - p.mean_curvature) -
               lambda * na * p.position.squaredNorm();
      });
      res28 = std::max(res28, normalized(lhs, rhs, {lhs, rhs}));
    }
    {
      const Scalar lhs = wint([&](const SurfacePoint& p) {
        const Scalar xa = p.position.dot(a);
        return xa * xa;
      });
      const Scalar tangent_sq = wint([&](const SurfacePoint& p) {
        const Scalar na = p.normal.dot(a);
        return a.squaredNorm() - na * na;  // |a^T|^2
      });
      const Scalar cross = wint([&](const SurfacePoint& p) {
        return lambda * p.normal.dot(a) * p.position.dot(a);
      });
      res29 = std::max(res29, normalized(lhs, tangent_sq + cross, {lhs, tangent_sq, cross}));
    }
  }

  const Scalar t27 = wint([&](const SurfacePoint& p) {
    return n - p.position.squaredNorm() + lambda * p.position.dot(p.normal);
  });
  const Scalar area27 = wint([](const SurfacePoint&) { return 1.0; });
  const Scalar res27 = normalized(t27, 0.0, {area27});

  const Scalar lhs210 = wint([&](const SurfacePoint& p) {
    const Scalar q =
        p.position.squaredNorm() - n - 0.5 * lambda * (lambda - p.mean_curvature);
    return q * q;
  });
  const Scalar rhs210 = wint([&](const SurfacePoint& p) {
    const Scalar dh = lambda - p.mean_curvature;
    return (0.25 * lambda * lambda - 1.0) * dh * dh + 2.0 * n -
           p.mean_curvature * p.mean_curvature + lambda * lambda;
  });
  const Scalar res210 = normalized(lhs210, rhs210, {lhs210, rhs210});

  auto report = [tolerance](const char* name, Scalar res) {
    return IdentityReport{name, res, tolerance, res <= tolerance};
  };
  return {report("lemma2.4-eq2.6", res26), report("lemma2.4-eq2.7", res27),
          report("lemma2.4-eq2.8", res28), report("lemma2.4-eq2.9", res29),
          report("lemma2.4-eq2.10", res210)};
}

}  // namespace lsl
