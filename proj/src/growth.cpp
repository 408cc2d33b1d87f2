#include "lsl/growth.hpp"

#include <cmath>

namespace lsl {

namespace {

Scalar polyline_length_in_ball(const CurveDesc& curve, Scalar r) {
  // Total length of the polygon clipped to |X| <= r.
  const auto& pts = curve.points;
  const std::size_t m = pts.size();
  Scalar total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d a = pts[i], b = pts[(i + 1) % m];
    const Eigen::Vector2d d = b - a;
    const Scalar len = d.norm();
    if (len == 0.0) continue;
    // |a + t d|^2 = r^2 -> quadratic in t on [0,1].
    const Scalar qa = d.squaredNorm();
    const Scalar qb = 2.0 * a.dot(d);
    const Scalar qc = a.squaredNorm() - r * r;
    const bool a_in = a.squaredNorm() <= r * r, b_in = b.squaredNorm() <= r * r;
    const Scalar disc = qb * qb - 4.0 * qa * qc;
    if (a_in && b_in) {
      total += len;
      continue;
    }
    if (disc <= 0.0) continue;  // segment entirely outside
    const Scalar sq = std::sqrt(disc);
    const Scalar t1 = std::clamp((-qb - sq) / (2.0 * qa), 0.0, 1.0);
    const Scalar t2 = std::clamp((-qb + sq) / (2.0 * qa), 0.0, 1.0);
    if (a_in) total += t1 * len;
    else if (b_in) total += (1.0 - t2) * len;
    else total += (t2 - t1) * len;  // chord through the ball
  }
  return total;
}

void require_noncompact(const SurfaceDescriptor& desc, const char* who) {
  if (std::get_if<CylinderDesc>(&desc) || std::get_if<PlaneDesc>(&desc)) return;
  throw std::invalid_argument(std::string(who) +
                              ": needs a non-compact descriptor (cylinder or plane)");
}

// Least-squares slope of y against x.
Scalar ls_slope(std::span<const Scalar> x, std::span<const Scalar> y) {
  const std::size_t m = x.size();
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

Scalar area_in_ball(const SurfaceDescriptor& desc, Scalar r) {
  if (r <= 0.0) throw std::invalid_argument("area_in_ball: radius must be positive");
  if (const auto* s = std::get_if<SphereDesc>(&desc)) {
    // Concentric ball: the sphere lies at |X| = rho, so the cap is empty
    // below rho and the full sphere above.
    return r >= s->r ? unit_sphere_area(s->n) * std::pow(s->r, s->n) : 0.0;
  }
  if (const auto* c = std::get_if<CylinderDesc>(&desc)) {
    if (r <= c->r0) return 0.0;
    const int m = c->n - c->k;
    return unit_sphere_area(c->k) * std::pow(c->r0, c->k) * unit_ball_volume(m) *
           std::pow(r * r - c->r0 * c->r0, 0.5 * m);
  }
  if (const auto* p = std::get_if<PlaneDesc>(&desc)) {
    return unit_ball_volume(p->n) * std::pow(r, p->n);
  }
  if (const auto* cv = std::get_if<CurveDesc>(&desc)) {
    return polyline_length_in_ball(*cv, r);
  }
  throw std::invalid_argument("area_in_ball: unsupported descriptor kind");
}

GrowthProfile growth_exponent(const SurfaceDescriptor& desc, Scalar r_min, Scalar r_max,
                              int samples) {
  require_noncompact(desc, "growth_exponent");
  if (!(0.0 < r_min && r_max >= 4.0 * r_min))
    throw std::invalid_argument("growth_exponent: need 0 < r_min and r_max >= 4 r_min");
  if (samples < 8) throw std::invalid_argument("growth_exponent: need at least 8 samples");

  GrowthProfile profile;
  profile.radii.resize(samples);
  profile.areas.resize(samples);
  const Scalar lmin = std::log(r_min), lmax = std::log(r_max);
  for (int i = 0; i < samples; ++i) {
    profile.radii[i] = std::exp(lmin + (lmax - lmin) * i / (samples - 1.0));
    profile.areas[i] = area_in_ball(desc, profile.radii[i]);
  }

  // Fit over the top half of the log grid (asymptotic regime).
  std::vector<Scalar> lx, ly;
  for (int i = samples / 2; i < samples; ++i) {
    if (profile.areas[i] <= 0.0) continue;
    lx.push_back(std::log(profile.radii[i]));
    ly.push_back(std::log(profile.areas[i]));
  }
  if (lx.size() < 2)
    throw std::invalid_argument("growth_exponent: not enough positive areas in the fit window");
  profile.fitted_exponent = ls_slope(lx, ly);

  if (const auto* c = std::get_if<CylinderDesc>(&desc)) {
    const Scalar h = c->k / c->r0;
    const Scalar lambda = h - c->r0;
    const Scalar beta = 0.25 * (lambda - h) * (lambda - h);
    profile.bound_exponent = c->n + 0.5 * lambda * lambda - 2.0 * beta - 0.5 * h * h;
  } else {
    profile.bound_exponent = surface_dim(desc);  // plane: lambda = H = 0
  }
  return profile;
}

AnnulusReport annulus_check(const SurfaceDescriptor& desc, int t_min, int t_max) {
  require_noncompact(desc, "annulus_check");
  if (t_min < 1 || t_max < t_min)
    throw std::invalid_argument("annulus_check: need 1 <= t_min <= t_max");
  AnnulusReport report;
  for (int t = t_min; t <= t_max; ++t) {
    const Scalar at = area_in_ball(desc, static_cast<Scalar>(t));
    const Scalar at1 = area_in_ball(desc, static_cast<Scalar>(t + 1));
    report.t.push_back(t);
    const bool valid = at > 0.0;
    report.valid.push_back(valid);
    report.ratio.push_back(valid ? (at1 - at) * t / at
                                 : std::numeric_limits<Scalar>::quiet_NaN());
    report.doubling.push_back(valid && at1 <= 2.0 * at);
    if (valid) report.max_ratio = std::max(report.max_ratio, report.ratio.back());
  }
  return report;
}

LinearLowerBound linear_lower_bound_check(const SurfaceDescriptor& desc, Scalar r_min,
                                          Scalar r_max, int samples) {
  require_noncompact(desc, "linear_lower_bound_check");
  if (!(0.0 < r_min && r_min < r_max) || samples < 4)
    throw std::invalid_argument("linear_lower_bound_check: invalid grid");
  std::vector<Scalar> rs(samples), as(samples);
  LinearLowerBound out;
  out.min_area_over_r = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < samples; ++i) {
    rs[i] = r_min + (r_max - r_min) * i / (samples - 1.0);
    as[i] = area_in_ball(desc, rs[i]);
    out.min_area_over_r = std::min(out.min_area_over_r, as[i] / rs[i]);
  }
  const int tail = samples / 2;
  out.slope = ls_slope(std::span(rs).subspan(tail), std::span(as).subspan(tail));
  out.pass = out.min_area_over_r > 0.0 && out.slope > 0.0;
  return out;
}

LogSobolevReport log_sobolev_check(const SampledSurface& surface, const LambdaParams& params,
                                   std::span<const NamedField> battery) {
  const GaussianFrame frame = GaussianFrame::standard(surface.n + 1);
  LogSobolevReport report;
  report.minimal_c1 = -std::numeric_limits<Scalar>::infinity();
  for (const auto& named : battery) {
    for (std::size_t i = 0; i < surface.points.size(); ++i) {
      if (named.field.value(surface.points[i]) < 0.0)
        throw std::invalid_argument("log_sobolev_check: battery function '" + named.name +
                                    "' is negative at sample " + std::to_string(i));
    }
    const Scalar norm_sq = integrate(surface.points,
                                     [&](const SurfacePoint& p) {
                                       const Scalar v = named.field.value(p);
                                       return v * v;
                                     },
                                     &frame)
                               .value;
    const Scalar scale = 1.0 / std::sqrt(norm_sq);
    LogSobolevCase entry;
    entry.name = named.name;
    // f^2 ln f extended by 0 at f = 0 (t^2 ln t -> 0).
    entry.lhs = integrate(surface.points,
                          [&](const SurfacePoint& p) {
                            const Scalar f = scale * named.field.value(p);
                            return f > 0.0 ? f * f * std::log(f) : 0.0;
                          },
                          &frame)
                    .value;
    entry.gradient_term = integrate(surface.points,
                                    [&](const SurfacePoint& p) {
                                      return scale * scale *
                                             named.field.gradient(p).squaredNorm();
                                    },
                                    &frame)
                              .value;
    entry.lambda_term = 0.25 * params.lambda * params.lambda;
    entry.required_c1 = 2.0 * (entry.lhs - entry.gradient_term - entry.lambda_term);
    report.minimal_c1 = std::max(report.minimal_c1, entry.required_c1);
    report.cases.push_back(std::move(entry));
  }
  for (auto& entry : report.cases)
    entry.margin = entry.gradient_term + 0.5 * report.minimal_c1 + entry.lambda_term - entry.lhs;
  return report;
}

std::vector<NamedField> standard_log_sobolev_battery(const SurfaceDescriptor& desc) {
  const int ambient = ambient_dim(desc);
  Vector z = Vector::Zero(ambient);
  z(0) = 1.0;
  const SurfaceField nz = normal_linear_field(desc, z);
  std::vector<NamedField> battery;

  battery.push_back({"const", constant_field(1.0, ambient)});

  SurfaceField affine;
  affine.value = [nz](const SurfacePoint& p) { return 1.0 + 0.5 * nz.value(p); };
  affine.gradient = [nz](const SurfacePoint& p) -> Vector { return 0.5 * nz.gradient(p); };
  affine.laplacian = [nz](const SurfacePoint& p) { return 0.5 * nz.laplacian(p); };
  battery.push_back({"1+<z,N>/2", affine});

  SurfaceField expo;
  expo.value = [nz](const SurfacePoint& p) { return std::exp(0.5 * nz.value(p)); };
  expo.gradient = [nz](const SurfacePoint& p) -> Vector {
    return 0.5 * std::exp(0.5 * nz.value(p)) * nz.gradient(p);
  };
  expo.laplacian = nullptr;  // not needed by the check
  battery.push_back({"exp(<z,N>/2)", expo});
  return battery;
}

}  // namespace lsl
