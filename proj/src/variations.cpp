#include "lsl/variations.hpp"

#include "lsl/gauss.hpp"

#include <cmath>
#include <memory>

namespace lsl {

namespace {

Scalar gaussian_norm(int n, Scalar t0) { return std::pow(4.0 * kPi * t0, -0.5 * n); }

void require_critical_sphere(const SphereDesc& sphere, const LambdaParams& params,
                             const char* who) {
  const Scalar lambda_crit = sphere.n / sphere.r - sphere.r;
  if (std::abs(params.lambda - lambda_crit) > 1e-12 * std::max(1.0, std::abs(lambda_crit)))
    throw std::invalid_argument(std::string(who) + ": sphere is critical only at lambda = n/r - r = " +
                                std::to_string(lambda_crit) + ", got " +
                                std::to_string(params.lambda));
}

}  // namespace

Scalar first_variation(const SampledSurface& surface, const GaussianFrame& frame,
                       const LambdaParams& params, const VariationData& var) {
  const Scalar t0 = frame.scale;
  const Scalar lambda = params.lambda;
  const int n = surface.n;
  const bool has_y = var.base_velocity.size() > 0 && var.base_velocity.squaredNorm() > 0.0;
  const Scalar h = var.scale_velocity;

  Scalar total = 0.0;
  if (var.normal_speed) {
    total += integrate(surface.points,
                       [&](const SurfacePoint& p) {
                         const Scalar drift =
                             (p.position - frame.center).dot(p.normal) / t0;
                         return (lambda - (p.mean_curvature + drift)) * var.normal_speed(p);
                       },
                       &frame)
                 .value;
  }
  if (has_y) {
    const Vector& y = var.base_velocity;
    total += integrate(surface.points,
                       [&](const SurfacePoint& p) {
                         return (p.position - frame.center).dot(y) / t0 -
                                lambda * p.normal.dot(y);
                       },
                       &frame)
                 .value;
  }
  if (h != 0.0) {
    total += integrate(surface.points,
                       [&](const SurfacePoint& p) {
                         const Vector d = p.position - frame.center;
                         return (d.squaredNorm() / t0 - n - lambda * d.dot(p.normal)) * h /
                                (2.0 * t0);
                       },
                       &frame)
                 .value;
  }
  return gaussian_norm(n, t0) * total;
}

QuadraticFormValue second_variation_F(const SphereDesc& sphere, const LambdaParams& params,
                                      const SphereVariation& var) {
  require_critical_sphere(sphere, params, "second_variation_F");
  const int n = sphere.n;
  const Scalar r = sphere.r;
  const Scalar lambda = params.lambda;
  const Scalar area = unit_sphere_area(n) * std::pow(r, n);
  const Scalar deg2 = area / (n + 1.0);  // int <v,N><w,N> dmu per unit <v,w>
  const Scalar weight = std::exp(-0.5 * r * r);
  const Scalar S = n / (r * r);
  const Scalar H = n / r;

  const Vector z = var.z.size() > 0 ? var.z : Vector();
  const Scalar zz = z.size() > 0 ? z.squaredNorm() : 0.0;
  const Scalar yy = var.k * var.k * zz;
  const Scalar yz = var.k * zz;

  QuadraticFormValue out;
  // -int f L f: per-mode coefficients mu_k - S - 1 + lambda^2.
  Scalar t_flf = (lambda * lambda - 1.0 - S) * var.a * var.a * area +
                 (lambda * lambda - 1.0) * zz * deg2;
  for (const auto& mode : var.f0) {
    if (mode.harmonic.degree < 2)
      throw std::invalid_argument("second_variation_F: f0 modes must have degree >= 2");
    const Scalar mu = sphere_laplace_eigenvalue(n, r, mode.harmonic.degree);
    t_flf += mode.amplitude * mode.amplitude * (mu - S - 1.0 + lambda * lambda) *
             mode.harmonic.norm_sq;
  }
  t_flf *= weight;

  // int (-|y|^2 + <X,y>^2): on the sphere <X,y>^2 integrates to r^2 deg2 |y|^2.
  const Scalar t_y = weight * yy * (r * r / (n + 1.0) - 1.0) * area;

  // Cross terms with f: <N,y> pairs with <z,N>, the constant block pairs with a.
  const Scalar t_cross =
      weight * (2.0 * (1.0 + lambda * r) * yz * deg2 +
                ((n + 1.0 - r * r) * lambda - 2.0 * H) * var.h * var.a * area);

  // int (|X|^2 - n - 1) <X,y> h w: odd in N, vanishes on the sphere.
  const Scalar t_hcross = 0.0;

  const Scalar t_h2 =
      weight *
      ((n * n + 2.0 * n) / 4.0 - (n + 2.0) * r * r / 2.0 + std::pow(r, 4) / 4.0 +
       0.75 * lambda * (lambda - H)) *
      var.h * var.h * area;

  out.term_breakdown = {{"fLf", t_flf}, {"y", t_y}, {"f_cross", t_cross},
                        {"h_cross", t_hcross}, {"h2", t_h2}};
  out.value = t_flf + t_y + t_cross + t_hcross + t_h2;
  return out;
}

Scalar second_variation_T(const SampledSurface& surface, const LambdaParams& params,
                          const SurfaceField& f) {
  const ResidualStats stats = lambda_residual(surface.points, params);
  if (stats.linf > 1e-8)
    throw std::invalid_argument("second_variation_T: surface is not critical for the given "
                                "lambda (residual " + std::to_string(stats.linf) + ")");
  const GaussianFrame frame = GaussianFrame::standard(surface.n + 1);
  const Scalar total_weight =
      integrate(surface.points, [](const SurfacePoint&) { return 1.0; }, &frame).value;
  const Scalar constraint =
      integrate(surface.points, [&](const SurfacePoint& p) { return f.value(p); }, &frame).value;
  if (std::abs(constraint) > 1e-8 * std::max(1.0, total_weight))
    throw std::invalid_argument(
        "second_variation_T: variation is not weighted volume-preserving (int f w dmu = " +
        std::to_string(constraint) + ")");
  const Scalar lambda = params.lambda;
  return integrate(surface.points,
                   [&](const SurfacePoint& p) {
                     const Scalar fv = f.value(p);
                     const Scalar lf =
                         drift_laplacian(f, p) +
                         (p.second_fundamental_norm_sq + 1.0 - lambda * lambda) * fv;
                     return -fv * lf;
                   },
                   &frame)
      .value;
}

Scalar second_variation_T_sphere(const SphereDesc& sphere, const SphereVariation& var) {
  if (var.a != 0.0)
    throw std::invalid_argument("second_variation_T_sphere: constant modes violate the "
                                "weighted volume-preserving constraint");
  const int n = sphere.n;
  const Scalar r = sphere.r;
  const Scalar lambda = n / r - r;
  const Scalar S = n / (r * r);
  const Scalar weight = std::exp(-0.5 * r * r);
  const Scalar deg2 = unit_sphere_area(n) * std::pow(r, n) / (n + 1.0);
  Scalar value = 0.0;
  if (var.z.size() > 0)
    value += (lambda * lambda - 1.0) * var.z.squaredNorm() * deg2;
  for (const auto& mode : var.f0) {
    const Scalar mu = sphere_laplace_eigenvalue(n, r, mode.harmonic.degree);
    value += mode.amplitude * mode.amplitude * (mu - S - 1.0 + lambda * lambda) *
             mode.harmonic.norm_sq;
  }
  return weight * value;
}

Scalar TrigPoly::eval(Scalar t) const {
  Scalar v = a0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
    v += cos_coeffs[k] * std::cos((k + 1.0) * t);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
    v += sin_coeffs[k] * std::sin((k + 1.0) * t);
  return v;
}

Scalar TrigPoly::deriv(Scalar t) const {
  Scalar v = 0.0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
    v -= cos_coeffs[k] * (k + 1.0) * std::sin((k + 1.0) * t);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
    v += sin_coeffs[k] * (k + 1.0) * std::cos((k + 1.0) * t);
  return v;
}

Scalar TrigPoly::deriv2(Scalar t) const {
  Scalar v = 0.0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
    v -= cos_coeffs[k] * (k + 1.0) * (k + 1.0) * std::cos((k + 1.0) * t);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
    v -= sin_coeffs[k] * (k + 1.0) * (k + 1.0) * std::sin((k + 1.0) * t);
  return v;
}

DeformationFamily circle_deformation(Scalar r, const LambdaParams& params, const TrigPoly& f,
                                     const Eigen::Vector2d& y, Scalar h, Scalar t0,
                                     int resolution) {
  DeformationFamily fam;
  fam.name = "circle r=" + std::to_string(r);
  const Scalar lambda = params.lambda;
  fam.f_of_s = [=](Scalar s) -> Scalar {
    const Scalar ts = t0 + s * h;
    if (ts <= 0.0) throw std::domain_error("circle_deformation: t_s became non-positive");
    const Scalar dt = 2.0 * kPi / resolution;
    std::vector<Scalar> a_contrib(resolution), v_contrib(resolution);
    const Scalar w0 = std::exp(-0.5 * r * r / t0) * r;
    for (int i = 0; i < resolution; ++i) {
      const Scalar t = i * dt;
      const Scalar ct = std::cos(t), st = std::sin(t);
      const Scalar fv = f.eval(t), fp = f.deriv(t), fpp = f.deriv2(t);
      // X = (r - s f) u - (s^2/2)(f f'/r) u_t
      const Scalar cu = r - s * fv;
      const Scalar cut = -0.5 * s * s * fv * fp / r;
      const Scalar x0 = cu * ct - cut * st - s * y.x();
      const Scalar x1 = cu * st + cut * ct - s * y.y();
      // X_t = (-s f' + s^2 f f'/(2r)) u + (r - s f - (s^2/2)(f'^2 + f f'')/r) u_t
      const Scalar du = -s * fp + 0.5 * s * s * fv * fp / r;
      const Scalar dut = (r - s * fv) - 0.5 * s * s * (fp * fp + fv * fpp) / r;
      const Scalar speed = std::sqrt(du * du + dut * dut);
      a_contrib[i] = std::exp(-(x0 * x0 + x1 * x1) / (2.0 * ts)) * speed * dt;
      // Lagrangian volume term: frozen normal -u, frozen weight and measure.
      const Scalar xdotn = -((cu * ct - cut * st - s * y.x()) * ct +
                             (cu * st + cut * ct - s * y.y()) * st);
      v_contrib[i] = xdotn * w0 * dt;
    }
    const Scalar area_term = gaussian_norm(1, ts) * pairwise_sum(a_contrib);
    const Scalar vol_term = lambda * gaussian_norm(1, t0) * std::sqrt(t0 / ts) *
                            pairwise_sum(v_contrib);
    return area_term + vol_term;
  };
  return fam;
}

DeformationFamily sphere_deformation(const SphereDesc& sphere, const LambdaParams& params,
                                     Scalar a, const Vector& z, const Vector& y, Scalar h,
                                     Scalar t0, int polar, int azimuth) {
  if (sphere.n != 2)
    throw std::invalid_argument("sphere_deformation: jet family implemented for n = 2 "
                                "(use circle_deformation for n = 1)");
  DeformationFamily fam;
  fam.name = "sphere n=2 r=" + std::to_string(sphere.r);
  const Scalar r = sphere.r;
  const Scalar lambda = params.lambda;
  const Vector zv = z.size() > 0 ? z : Vector::Zero(3);
  const Vector yv = y.size() > 0 ? y : Vector::Zero(3);

  struct Node {
    Eigen::Vector3d x, t1, t2;
    Scalar w;
  };
  auto grid = std::make_shared<std::vector<Node>>();
  const Rule1d pol = gauss_legendre(polar);
  for (int i = 0; i < polar; ++i) {
    const Scalar u = pol.nodes[i];
    const Scalar squ = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int j = 0; j < azimuth; ++j) {
      const Scalar ph = 2.0 * kPi * j / azimuth;
      Node nd;
      nd.x = r * Eigen::Vector3d(squ * std::cos(ph), squ * std::sin(ph), u);
      nd.t1 = Eigen::Vector3d(-std::sin(ph), std::cos(ph), 0.0);
      nd.t2 = Eigen::Vector3d(u * std::cos(ph), u * std::sin(ph), -squ);
      nd.w = pol.weights[i] * (2.0 * kPi / azimuth) * r * r;
      grid->push_back(nd);
    }
  }

  fam.f_of_s = [=](Scalar s) -> Scalar {
    const Scalar ts = t0 + s * h;
    if (ts <= 0.0) throw std::domain_error("sphere_deformation: t_s became non-positive");
    const Eigen::Vector3d zc(zv(0), zv(1), zv(2));
    const Eigen::Vector3d xs = s * Eigen::Vector3d(yv(0), yv(1), yv(2));
    std::vector<Scalar> a_contrib(grid->size()), v_contrib(grid->size());
    const Scalar w0 = std::exp(-0.5 * r * r / t0);
    parallel_for(grid->size(), [&](std::size_t i) {
      const Node& nd = (*grid)[i];
      const Eigen::Vector3d n0 = -nd.x / r;
      const Scalar fz = zc.dot(n0);
      const Scalar f = a + fz;
      const Eigen::Vector3d zt = zc - zc.dot(n0) * n0;  // tangential part of z
      const Eigen::Vector3d gf = -zt / r;               // grad f
      const Eigen::Vector3d corr = -0.5 * f * gf;
      const Eigen::Vector3d phi = nd.x + s * f * n0 + s * s * corr;
      auto dphi = [&](const Eigen::Vector3d& tau) -> Eigen::Vector3d {
        const Eigen::Vector3d dn = -tau / r;
        const Scalar df = gf.dot(tau);
        const Eigen::Vector3d dgf = (zc.dot(tau) * nd.x + zc.dot(nd.x) * tau) / (r * r * r);
        const Eigen::Vector3d dcorr = -0.5 * (df * gf + f * dgf);
        return tau + s * (f * dn + df * n0) + s * s * dcorr;
      };
      const Eigen::Vector3d e1 = dphi(nd.t1), e2 = dphi(nd.t2);
      const Scalar g11 = e1.squaredNorm(), g22 = e2.squaredNorm(), g12 = e1.dot(e2);
      const Scalar jac = std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));
      a_contrib[i] = std::exp(-(phi - xs).squaredNorm() / (2.0 * ts)) * jac * nd.w;
      v_contrib[i] = (phi - xs).dot(n0) * w0 * nd.w;
    });
    const Scalar area_term = gaussian_norm(2, ts) * pairwise_sum(a_contrib);
    const Scalar vol_term = lambda * gaussian_norm(2, t0) * std::sqrt(t0 / ts) *
                            pairwise_sum(v_contrib);
    return area_term + vol_term;
  };
  return fam;
}

DeformationFamily polyline_deformation(const CurveDesc& curve, const LambdaParams& params,
                                       const std::function<Scalar(const SurfacePoint&)>& f,
                                       const Eigen::Vector2d& y, Scalar h, Scalar t0) {
  DeformationFamily fam;
  fam.name = "polyline";
  const Scalar lambda = params.lambda;
  auto base = std::make_shared<std::vector<SurfacePoint>>(curvature_of_polyline(curve.points));
  auto speeds = std::make_shared<std::vector<Scalar>>();
  speeds->reserve(base->size());
  for (const auto& p : *base) speeds->push_back(f(p));

  fam.f_of_s = [=](Scalar s) -> Scalar {
    const Scalar ts = t0 + s * h;
    if (ts <= 0.0) throw std::domain_error("polyline_deformation: t_s became non-positive");
    const std::size_t m = base->size();
    std::vector<Eigen::Vector2d> moved(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& p = (*base)[i];
      moved[i] = Eigen::Vector2d(p.position(0), p.position(1)) +
                 s * (*speeds)[i] * Eigen::Vector2d(p.normal(0), p.normal(1));
    }
    const auto current = curvature_of_polyline(moved);
    const Eigen::Vector2d xs = s * y;
    std::vector<Scalar> a_contrib(m), v_contrib(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Vector2d d = moved[i] - xs;
      a_contrib[i] = std::exp(-d.squaredNorm() / (2.0 * ts)) * current[i].area_weight;
      const auto& p0 = (*base)[i];
      const Scalar w0 = std::exp(-p0.position.squaredNorm() / (2.0 * t0)) * p0.area_weight;
      v_contrib[i] = (d.x() * p0.normal(0) + d.y() * p0.normal(1)) * w0;
    }
    return gaussian_norm(1, ts) * pairwise_sum(a_contrib) +
           lambda * gaussian_norm(1, t0) * std::sqrt(t0 / ts) * pairwise_sum(v_contrib);
  };
  return fam;
}

namespace {

FdReport analyze_fd(std::vector<Scalar> steps, std::vector<Scalar> fd_values, Scalar formula) {
  FdReport rep;
  rep.steps = std::move(steps);
  rep.fd_values = std::move(fd_values);
  rep.formula = formula;
  rep.errors.resize(rep.steps.size());
  for (std::size_t i = 0; i < rep.steps.size(); ++i)
    rep.errors[i] = std::abs(rep.fd_values[i] - formula);

  const Scalar floor = 1e-13 * std::max(1.0, std::abs(formula));
  std::vector<Scalar> lx, ly;
  for (std::size_t i = 0; i < rep.steps.size(); ++i) {
    if (rep.errors[i] > floor) {
      lx.push_back(std::log(rep.steps[i]));
      ly.push_back(std::log(rep.errors[i]));
    }
  }
  if (lx.size() < 2) {
    rep.at_noise_floor = true;
    rep.slope = 2.0;  // agreement at round-off everywhere; order unmeasurable
    rep.converged = true;
    return rep;
  }
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const Scalar m = static_cast<Scalar>(lx.size());
  rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.converged = rep.slope >= 1.5;
  return rep;
}

}  // namespace

FdReport fd_check_first_variation(const DeformationFamily& family, Scalar formula,
                                  std::span<const Scalar> steps) {
  std::vector<Scalar> fd(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Scalar s = steps[i];
    fd[i] = (family.f_of_s(s) - family.f_of_s(-s)) / (2.0 * s);
  }
  return analyze_fd({steps.begin(), steps.end()}, std::move(fd), formula);
}

FdReport fd_check_second_variation(const DeformationFamily& family, Scalar formula,
                                   std::span<const Scalar> steps, Scalar fd_scale) {
  const Scalar f0 = family.f_of_s(0.0);
  std::vector<Scalar> fd(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Scalar s = steps[i];
    fd[i] = fd_scale * (family.f_of_s(s) - 2.0 * f0 + family.f_of_s(-s)) / (s * s);
  }
  return analyze_fd({steps.begin(), steps.end()}, std::move(fd), formula);
}

}  // namespace lsl
