#include "lsl/surface.hpp"

#include "lsl/gauss.hpp"

#include <cmath>

namespace lsl {

QuadratureSpec QuadratureSpec::halved() const {
  QuadratureSpec h = *this;
  auto cut = [](int& v) { v = std::max(4, v / 2); };
  cut(h.circle_points);
  cut(h.sphere_polar);
  cut(h.sphere_azimuth);
  cut(h.sphere_chebyshev);
  cut(h.cylinder_angular);
  cut(h.axial_points);
  cut(h.plane_radial);
  cut(h.plane_azimuth);
  return h;
}

int surface_dim(const SurfaceDescriptor& desc) {
  return std::visit(
      [](const auto& d) -> int {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SphereDesc>) return d.n;
        if constexpr (std::is_same_v<T, CylinderDesc>) return d.n;
        if constexpr (std::is_same_v<T, PlaneDesc>) return d.n;
        if constexpr (std::is_same_v<T, CurveDesc>) return 1;
        if constexpr (std::is_same_v<T, ProfileDesc>) return d.n;
      },
      desc);
}

int ambient_dim(const SurfaceDescriptor& desc) { return surface_dim(desc) + 1; }

std::optional<Scalar> canonical_lambda(const SurfaceDescriptor& desc) {
  if (const auto* s = std::get_if<SphereDesc>(&desc)) return s->n / s->r - s->r;
  if (const auto* c = std::get_if<CylinderDesc>(&desc)) return c->k / c->r0 - c->r0;
  if (std::get_if<PlaneDesc>(&desc)) return 0.0;
  return std::nullopt;
}

namespace {

// Samples of the unit sphere S^k in R^{k+1}: (position, weight), k in {1,2,3}.
// k = 1 uses a uniform (trapezoid) rule, k = 2 Gauss-Legendre in cos(theta)
// times uniform azimuth, k = 3 Gauss-Chebyshev-2 for the extra polar angle.
std::vector<std::pair<Vector, Scalar>> unit_sphere_samples(int k, const QuadratureSpec& spec,
                                                           int circle_points) {
  std::vector<std::pair<Vector, Scalar>> out;
  if (k == 1) {
    const Rule1d ang = uniform_periodic(circle_points, 2.0 * kPi);
    out.reserve(ang.nodes.size());
    for (std::size_t i = 0; i < ang.nodes.size(); ++i) {
      Vector u(2);
      u << std::cos(ang.nodes[i]), std::sin(ang.nodes[i]);
      out.emplace_back(std::move(u), ang.weights[i]);
    }
    return out;
  }
  if (k == 2) {
    const Rule1d pol = gauss_legendre(spec.sphere_polar);
    const Rule1d ang = uniform_periodic(spec.sphere_azimuth, 2.0 * kPi);
    out.reserve(pol.nodes.size() * ang.nodes.size());
    for (std::size_t i = 0; i < pol.nodes.size(); ++i) {
      const Scalar u = pol.nodes[i];
      const Scalar s = std::sqrt(std::max(0.0, 1.0 - u * u));
      for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
        Vector p(3);
        p << s * std::cos(ang.nodes[j]), s * std::sin(ang.nodes[j]), u;
        out.emplace_back(std::move(p), pol.weights[i] * ang.weights[j]);
      }
    }
    return out;
  }
  if (k == 3) {
    // S^3: X = (u, sqrt(1-u^2) Y), dmu = sqrt(1-u^2) du dmu_{S^2}; the
    // (1-u^2)^{1/2} factor is exactly the Gauss-Chebyshev-2 weight.
    const Rule1d ch = gauss_chebyshev2(spec.sphere_chebyshev);
    const auto inner = unit_sphere_samples(2, spec, circle_points);
    out.reserve(ch.nodes.size() * inner.size());
    for (std::size_t i = 0; i < ch.nodes.size(); ++i) {
      const Scalar u = ch.nodes[i];
      const Scalar s = std::sqrt(std::max(0.0, 1.0 - u * u));
      for (const auto& [y, wy] : inner) {
        Vector p(4);
        p << u, s * y(0), s * y(1), s * y(2);
        out.emplace_back(std::move(p), ch.weights[i] * wy);
      }
    }
    return out;
  }
  throw std::invalid_argument("sample_surface: sphere quadrature supports n in {1,2,3}; "
                              "dimension " + std::to_string(k) +
                              " is served by closed-form moments only");
}

std::vector<SurfacePoint> sample_sphere(const SphereDesc& d, const QuadratureSpec& spec) {
  if (d.r <= 0.0) throw std::invalid_argument("sample_surface: sphere radius must be positive");
  if (d.n < 1) throw std::invalid_argument("sample_surface: sphere dimension must be >= 1");
  const auto unit = unit_sphere_samples(d.n, spec, spec.circle_points);
  const Scalar rn = std::pow(d.r, d.n);
  std::vector<SurfacePoint> pts;
  pts.reserve(unit.size());
  for (const auto& [u, w] : unit) {
    SurfacePoint p;
    p.position = d.r * u;
    p.normal = -u;
    p.mean_curvature = d.n / d.r;
    p.second_fundamental_norm_sq = d.n / (d.r * d.r);
    p.area_weight = w * rn;
    pts.push_back(std::move(p));
  }
  return pts;
}

// Tensor grid over [-L, L]^m with Gauss-Legendre per axis, m in {1,2}.
std::vector<std::pair<Vector, Scalar>> axial_samples(int m, Scalar half_length,
                                                     const QuadratureSpec& spec) {
  const Rule1d gl = gauss_legendre(spec.axial_points, -half_length, half_length);
  std::vector<std::pair<Vector, Scalar>> out;
  if (m == 1) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      Vector v(1);
      v << gl.nodes[i];
      out.emplace_back(std::move(v), gl.weights[i]);
    }
    return out;
  }
  if (m == 2) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        Vector v(2);
        v << gl.nodes[i], gl.nodes[j];
        out.emplace_back(std::move(v), gl.weights[i] * gl.weights[j]);
      }
    return out;
  }
  throw std::invalid_argument("sample_surface: cylinder supports n-k in {1,2}");
}

std::vector<SurfacePoint> sample_cylinder(const CylinderDesc& d, const QuadratureSpec& spec) {
  if (d.r0 <= 0.0) throw std::invalid_argument("sample_surface: cylinder r0 must be positive");
  if (d.k < 1 || d.k >= d.n)
    throw std::invalid_argument("sample_surface: cylinder requires 1 <= k < n");
  if (d.k > 2)
    throw std::invalid_argument("sample_surface: cylinder sphere factor supports k in {1,2}");
  if (d.half_length <= 0.0)
    throw std::invalid_argument("sample_surface: cylinder half_length must be positive");
  const auto sphere_part = unit_sphere_samples(d.k, spec, spec.cylinder_angular);
  const auto axial_part = axial_samples(d.n - d.k, d.half_length, spec);
  const Scalar rk = std::pow(d.r0, d.k);
  const int ambient = d.n + 1;
  std::vector<SurfacePoint> pts;
  pts.reserve(sphere_part.size() * axial_part.size());
  for (const auto& [u, wu] : sphere_part) {
    for (const auto& [x, wx] : axial_part) {
      SurfacePoint p;
      p.position = Vector::Zero(ambient);
      p.position.head(d.k + 1) = d.r0 * u;
      p.position.tail(d.n - d.k) = x;
      p.normal = Vector::Zero(ambient);
      p.normal.head(d.k + 1) = -u;
      p.mean_curvature = d.k / d.r0;
      p.second_fundamental_norm_sq = d.k / (d.r0 * d.r0);
      p.area_weight = wu * rk * wx;
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

std::vector<SurfacePoint> sample_plane(const PlaneDesc& d, const QuadratureSpec& spec) {
  if (d.n < 1 || d.n > 2)
    throw std::invalid_argument("sample_surface: plane sampling supports n in {1,2}");
  const int ambient = d.n + 1;
  std::vector<SurfacePoint> pts;
  Vector normal = Vector::Zero(ambient);
  normal(d.n) = 1.0;
  if (d.n == 1) {
    const Rule1d gl = gauss_legendre(spec.axial_points, -spec.half_length, spec.half_length);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      SurfacePoint p;
      p.position = Vector::Zero(2);
      p.position(0) = gl.nodes[i];
      p.normal = normal;
      p.area_weight = gl.weights[i];
      pts.push_back(std::move(p));
    }
    return pts;
  }
  const Rule1d rad = gauss_legendre(spec.plane_radial, 0.0, spec.half_length);
  const Rule1d ang = uniform_periodic(spec.plane_azimuth, 2.0 * kPi);
  for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
    const Scalar rho = rad.nodes[i];
    for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
      SurfacePoint p;
      p.position = Vector::Zero(3);
      p.position(0) = rho * std::cos(ang.nodes[j]);
      p.position(1) = rho * std::sin(ang.nodes[j]);
      p.normal = normal;
      p.area_weight = rad.weights[i] * rho * ang.weights[j];
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

struct PolylineGeometry {
  std::vector<Eigen::Vector2d> normals;
  std::vector<Scalar> curvature;
  std::vector<Scalar> weight;
};

PolylineGeometry polyline_geometry(std::span<const Eigen::Vector2d> pts) {
  const std::size_t m = pts.size();
  if (m < 8) throw std::invalid_argument("polyline: need at least 8 markers");
  Scalar scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, pts[i].norm());
  if (scale <= 0.0) scale = 1.0;
  PolylineGeometry g;
  g.normals.resize(m);
  g.curvature.resize(m);
  g.weight.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d& prev = pts[(i + m - 1) % m];
    const Eigen::Vector2d& cur = pts[i];
    const Eigen::Vector2d& next = pts[(i + 1) % m];
    const Eigen::Vector2d e0 = cur - prev, e1 = next - cur;
    const Scalar l0 = e0.norm(), l1 = e1.norm();
    if (l0 < 1e-14 * scale || l1 < 1e-14 * scale)
      throw std::invalid_argument("polyline: coincident adjacent markers at index " +
                                  std::to_string(i));
    const Scalar turn = std::atan2(e0.x() * e1.y() - e0.y() * e1.x(), e0.dot(e1));
    if (std::abs(turn) > kPi - 1e-9)
      throw std::invalid_argument("polyline: fold (adjacent segments overlap) at index " +
                                  std::to_string(i));
    Eigen::Vector2d tangent = e0 / l0 + e1 / l1;
    const Scalar tn = tangent.norm();
    if (tn < 1e-14)
      throw std::invalid_argument("polyline: degenerate tangent at index " + std::to_string(i));
    tangent /= tn;
    const Scalar w = 0.5 * (l0 + l1);
    g.normals[i] = Eigen::Vector2d(-tangent.y(), tangent.x());
    g.curvature[i] = turn / w;
    g.weight[i] = w;
  }
  return g;
}

std::vector<SurfacePoint> sample_profile(const ProfileDesc& d, const QuadratureSpec& spec) {
  if (d.n != 2)
    throw std::invalid_argument("sample_surface: profile revolution supports n = 2 only");
  for (const auto& p : d.points)
    if (p.x() <= 0.0)
      throw std::invalid_argument("sample_surface: profile markers must have rho > 0");
  const PolylineGeometry g = polyline_geometry(d.points);
  const Rule1d ang = uniform_periodic(spec.sphere_azimuth, 2.0 * kPi);
  std::vector<SurfacePoint> pts;
  pts.reserve(d.points.size() * ang.nodes.size());
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const Scalar rho = d.points[i].x(), z = d.points[i].y();
    const Scalar nu_rho = g.normals[i].x(), nu_z = g.normals[i].y();
    const Scalar kappa_m = g.curvature[i];
    const Scalar kappa_p = -nu_rho / rho;  // II_phiphi / g_phiphi = -nu_rho / rho
    for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
      const Scalar c = std::cos(ang.nodes[j]), s = std::sin(ang.nodes[j]);
      SurfacePoint p;
      p.position = Vector(3);
      p.position << rho * c, rho * s, z;
      p.normal = Vector(3);
      p.normal << nu_rho * c, nu_rho * s, nu_z;
      p.mean_curvature = kappa_m + kappa_p;
      p.second_fundamental_norm_sq = kappa_m * kappa_m + kappa_p * kappa_p;
      p.area_weight = g.weight[i] * rho * ang.weights[j];
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

}  // namespace

std::vector<SurfacePoint> curvature_of_polyline(std::span<const Eigen::Vector2d> markers) {
  const PolylineGeometry g = polyline_geometry(markers);
  std::vector<SurfacePoint> pts;
  pts.reserve(markers.size());
  for (std::size_t i = 0; i < markers.size(); ++i) {
    SurfacePoint p;
    p.position = Vector(2);
    p.position << markers[i].x(), markers[i].y();
    p.normal = Vector(2);
    p.normal << g.normals[i].x(), g.normals[i].y();
    p.mean_curvature = g.curvature[i];
    p.second_fundamental_norm_sq = g.curvature[i] * g.curvature[i];
    p.area_weight = g.weight[i];
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<SurfacePoint> sample_surface(const SurfaceDescriptor& desc,
                                         const QuadratureSpec& spec) {
  return std::visit(
      [&spec](const auto& d) -> std::vector<SurfacePoint> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SphereDesc>) return sample_sphere(d, spec);
        if constexpr (std::is_same_v<T, CylinderDesc>) return sample_cylinder(d, spec);
        if constexpr (std::is_same_v<T, PlaneDesc>) return sample_plane(d, spec);
        if constexpr (std::is_same_v<T, CurveDesc>)
          return curvature_of_polyline(d.points);
        if constexpr (std::is_same_v<T, ProfileDesc>) return sample_profile(d, spec);
      },
      desc);
}

SampledSurface make_sampled(const SurfaceDescriptor& desc, const QuadratureSpec& spec) {
  SampledSurface s;
  s.desc = desc;
  s.n = surface_dim(desc);
  s.points = sample_surface(desc, spec);
  return s;
}

ResidualStats lambda_residual(std::span<const SurfacePoint> points, const LambdaParams& params) {
  ResidualStats stats;
  Scalar weighted_sq = 0.0, total_weight = 0.0;
  for (const auto& p : points) {
    const Scalar res = std::abs(p.position.dot(p.normal) + p.mean_curvature - params.lambda);
    stats.linf = std::max(stats.linf, res);
    weighted_sq += res * res * p.area_weight;
    total_weight += p.area_weight;
  }
  if (total_weight > 0.0) stats.l2 = std::sqrt(weighted_sq / total_weight);
  return stats;
}

ResidualStats lambda_residual(const SurfaceDescriptor& desc, const LambdaParams& params,
                              const QuadratureSpec& spec) {
  const auto pts = sample_surface(desc, spec);
  return lambda_residual(pts, params);
}

Scalar drift_laplacian(const SurfaceField& f, const SurfacePoint& p) {
  return f.laplacian(p) - p.position.dot(f.gradient(p));
}

SurfaceField constant_field(Scalar c, int ambient) {
  SurfaceField f;
  f.value = [c](const SurfacePoint&) { return c; };
  f.gradient = [ambient](const SurfacePoint&) { return Vector::Zero(ambient); };
  f.laplacian = [](const SurfacePoint&) { return 0.0; };
  return f;
}

SurfaceField linear_field(const Vector& a) {
  SurfaceField f;
  f.value = [a](const SurfacePoint& p) { return p.position.dot(a); };
  f.gradient = [a](const SurfacePoint& p) -> Vector {
    return a - a.dot(p.normal) * p.normal;
  };
  f.laplacian = [a](const SurfacePoint& p) { return p.mean_curvature * p.normal.dot(a); };
  return f;
}

SurfaceField radius_sq_field(int n) {
  SurfaceField f;
  f.value = [](const SurfacePoint& p) { return p.position.squaredNorm(); };
  f.gradient = [](const SurfacePoint& p) -> Vector {
    return 2.0 * (p.position - p.position.dot(p.normal) * p.normal);
  };
  f.laplacian = [n](const SurfacePoint& p) {
    return 2.0 * (n + p.mean_curvature * p.position.dot(p.normal));
  };
  return f;
}

SurfaceField normal_linear_field(const SurfaceDescriptor& desc, const Vector& a) {
  SurfaceField f;
  f.value = [a](const SurfacePoint& p) { return p.normal.dot(a); };
  if (const auto* sp = std::get_if<SphereDesc>(&desc)) {
    const Scalar r = sp->r;
    const Scalar S = sp->n / (r * r);
    f.gradient = [a, r](const SurfacePoint& p) -> Vector {
      return -(a - a.dot(p.normal) * p.normal) / r;
    };
    f.laplacian = [a, S](const SurfacePoint& p) { return -S * p.normal.dot(a); };
    return f;
  }
  if (const auto* cy = std::get_if<CylinderDesc>(&desc)) {
    const int k = cy->k;
    const Scalar r0 = cy->r0;
    const Scalar S = k / (r0 * r0);
    f.gradient = [a, k, r0](const SurfacePoint& p) -> Vector {
      // Only the sphere-factor block of a contributes; project it onto the
      // tangent space of S^k(r0).
      Vector g = Vector::Zero(p.position.size());
      const Vector as = a.head(k + 1);
      const Vector us = p.position.head(k + 1) / r0;
      g.head(k + 1) = -(as - as.dot(us) * us) / r0;
      return g;
    };
    f.laplacian = [a, S](const SurfacePoint& p) { return -S * p.normal.dot(a); };
    return f;
  }
  if (std::get_if<PlaneDesc>(&desc)) {
    f.gradient = [a](const SurfacePoint& p) { return Vector::Zero(p.position.size()).eval(); };
    f.laplacian = [](const SurfacePoint&) { return 0.0; };
    return f;
  }
  throw std::invalid_argument(
      "normal_linear_field: analytic <N,a> calculus is available for spheres, cylinders and "
      "planes only");
}

Scalar sphere_laplace_eigenvalue(int n, Scalar r, int k) {
  return (static_cast<Scalar>(k) * k + (n - 1.0) * k) / (r * r);
}

HarmonicField circle_harmonic(Scalar r, int k, bool sine) {
  if (k < 1) throw std::invalid_argument("circle_harmonic: degree must be >= 1");
  HarmonicField h;
  h.degree = k;
  h.name = (sine ? "sin" : "cos") + std::to_string(k) + "t";
  h.norm_sq = kPi * r;  // integral of cos^2(k theta) r dtheta
  const Scalar mu = sphere_laplace_eigenvalue(1, r, k);
  h.field.value = [k, sine](const SurfacePoint& p) {
    const Scalar t = std::atan2(p.position(1), p.position(0));
    return sine ? std::sin(k * t) : std::cos(k * t);
  };
  h.field.gradient = [k, r, sine](const SurfacePoint& p) -> Vector {
    const Scalar t = std::atan2(p.position(1), p.position(0));
    const Scalar dfdt = sine ? k * std::cos(k * t) : -k * std::sin(k * t);
    Vector tangent(2);
    tangent << -std::sin(t), std::cos(t);
    return (dfdt / r) * tangent;
  };
  h.field.laplacian = [k, sine, mu](const SurfacePoint& p) {
    const Scalar t = std::atan2(p.position(1), p.position(0));
    const Scalar v = sine ? std::sin(k * t) : std::cos(k * t);
    return -mu * v;
  };
  return h;
}

namespace {

// Harmonic homogeneous polynomial with ambient gradient; restriction to the
// sphere has tangential gradient = projection and Laplacian -mu_k * value.
HarmonicField polynomial_harmonic(int n, Scalar r, int degree, std::string name,
                                  std::function<Scalar(const Vector&)> value,
                                  std::function<Vector(const Vector&)> ambient_grad,
                                  Scalar norm_sq) {
  HarmonicField h;
  h.degree = degree;
  h.name = std::move(name);
  h.norm_sq = norm_sq;
  const Scalar mu = sphere_laplace_eigenvalue(n, r, degree);
  h.field.value = [value](const SurfacePoint& p) { return value(p.position); };
  h.field.gradient = [ambient_grad](const SurfacePoint& p) -> Vector {
    const Vector g = ambient_grad(p.position);
    return g - g.dot(p.normal) * p.normal;
  };
  h.field.laplacian = [value, mu](const SurfacePoint& p) { return -mu * value(p.position); };
  return h;
}

}  // namespace

HarmonicField sphere_pair_harmonic(int n, Scalar r, int i, int j) {
  if (i == j || i < 0 || j < 0 || i > n || j > n)
    throw std::invalid_argument("sphere_pair_harmonic: need distinct indices within dimension");
  const std::vector<int> exps = [&] {
    std::vector<int> e(n + 1, 0);
    e[i] = 1;
    e[j] = 1;
    return e;
  }();
  const Scalar norm_sq = unit_sphere_area(n) * std::pow(r, n) * r * r * r * r *
                         sphere_normal_even_moment(n, exps);
  return polynomial_harmonic(
      n, r, 2, "x" + std::to_string(i) + "x" + std::to_string(j),
      [i, j](const Vector& x) { return x(i) * x(j); },
      [i, j](const Vector& x) -> Vector {
        Vector g = Vector::Zero(x.size());
        g(i) = x(j);
        g(j) = x(i);
        return g;
      },
      norm_sq);
}

HarmonicField sphere2_harmonic(Scalar r, int degree, int variant) {
  const int n = 2;
  const Scalar A = unit_sphere_area(n) * r * r;
  if (degree == 2) {
    switch (variant) {
      case 0: return sphere_pair_harmonic(n, r, 0, 1);
      case 1: return sphere_pair_harmonic(n, r, 1, 2);
      case 2: return sphere_pair_harmonic(n, r, 0, 2);
      case 3: {
        // x^2 - y^2: E[(N0^2-N1^2)^2] = 2 E[N^4] - 2 E[N0^2 N1^2] = 4/15 on S^2.
        const Scalar norm_sq = A * r * r * r * r * (4.0 / 15.0);
        return polynomial_harmonic(
            n, r, 2, "x2-y2", [](const Vector& x) { return x(0) * x(0) - x(1) * x(1); },
            [](const Vector& x) -> Vector {
              Vector g(3);
              g << 2.0 * x(0), -2.0 * x(1), 0.0;
              return g;
            },
            norm_sq);
      }
      default: break;
    }
  }
  if (degree == 3 && variant == 0) {
    const int e[3] = {1, 1, 1};
    const Scalar norm_sq = A * std::pow(r, 6) * sphere_normal_even_moment(n, std::span(e, 3));
    return polynomial_harmonic(
        n, r, 3, "xyz", [](const Vector& x) { return x(0) * x(1) * x(2); },
        [](const Vector& x) -> Vector {
          Vector g(3);
          g << x(1) * x(2), x(0) * x(2), x(0) * x(1);
          return g;
        },
        norm_sq);
  }
  throw std::invalid_argument("sphere2_harmonic: unsupported degree/variant");
}

}  // namespace lsl
