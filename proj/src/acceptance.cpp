#include "lsl/acceptance.hpp"

#include "lsl/flow.hpp"
#include "lsl/growth.hpp"
#include "lsl/stability.hpp"
#include "lsl/variations.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace lsl {

namespace {

std::string num(Scalar v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

std::vector<std::pair<SurfaceDescriptor, std::string>> canonical_surface_matrix() {
  std::vector<std::pair<SurfaceDescriptor, std::string>> out;
  for (int n : {1, 2, 3})
    for (Scalar r : {0.8, 1.0, 1.6})
      out.emplace_back(SphereDesc{n, r}, "sphere n=" + std::to_string(n) + " r=" + num(r));
  out.emplace_back(CylinderDesc{1, 2, 1.0}, "cylinder k=1 n=2 r0=1");
  out.emplace_back(CylinderDesc{1, 3, 1.0}, "cylinder k=1 n=3 r0=1");
  out.emplace_back(CylinderDesc{2, 3, std::sqrt(2.0)}, "cylinder k=2 n=3 r0=sqrt2");
  return out;
}

std::vector<IdentitySuiteRow> run_identity_matrix() {
  auto matrix = canonical_surface_matrix();
  matrix.emplace_back(CylinderDesc{1, 2, 0.8}, "cylinder k=1 n=2 r0=0.8");
  matrix.emplace_back(CylinderDesc{1, 3, 0.8}, "cylinder k=1 n=3 r0=0.8");
  matrix.emplace_back(CylinderDesc{2, 3, 1.1}, "cylinder k=2 n=3 r0=1.1");
  std::vector<IdentitySuiteRow> rows;
  for (const auto& [desc, name] : matrix) {
    const LambdaParams params{*canonical_lambda(desc), surface_dim(desc)};
    for (const auto& rep : drift_identity_residuals(desc, params)) rows.push_back({name, rep});
    for (const auto& rep : integral_identity_residuals(desc, params)) rows.push_back({name, rep});
  }
  return rows;
}

namespace {

CriterionResult criterion_criticality(unsigned seed) {
  CriterionResult res{1, "criticality (first variation vanishes on lambda-hypersurfaces)", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> unit(-1.0, 1.0);
  Scalar worst = 0.0;
  std::string worst_name;
  for (const auto& [desc, name] : canonical_surface_matrix()) {
    const SampledSurface surface = make_sampled(desc);
    const int ambient = surface.n + 1;
    const GaussianFrame frame = GaussianFrame::standard(ambient);
    const LambdaParams params{*canonical_lambda(desc), surface.n};
    for (int trial = 0; trial < 20; ++trial) {
      const Scalar c0 = unit(rng), c2 = unit(rng);
      Vector c1(ambient), y(ambient);
      for (int i = 0; i < ambient; ++i) {
        c1(i) = unit(rng);
        y(i) = unit(rng);
      }
      VariationData var;
      var.normal_speed = [c0, c1, c2](const SurfacePoint& p) {
        return c0 + c1.dot(p.position) + c2 * p.position.squaredNorm();
      };
      var.base_velocity = y;
      var.scale_velocity = unit(rng);
      const Scalar fv = std::abs(first_variation(surface, frame, params, var));
      if (fv > worst) {
        worst = fv;
        worst_name = name;
      }
    }
  }
  if (worst > 1e-7) res.pass = false;

  // Sentinel: a sphere paired with the wrong lambda is far from critical.
  const SampledSurface bad = make_sampled(SphereDesc{2, 1.0});
  VariationData ones;
  ones.normal_speed = [](const SurfacePoint&) { return 1.0; };
  const Scalar sentinel = std::abs(
      first_variation(bad, GaussianFrame::standard(3), LambdaParams{0.0, 2}, ones));
  if (sentinel < 1e-2) res.pass = false;
  res.details = "max |F'| = " + num(worst) + " (worst: " + worst_name +
                ", tol 1e-7); wrong-lambda sentinel = " + num(sentinel) + " (> 1e-2)";
  return res;
}

}  // namespace

std::vector<FdBatteryRow> run_fd_battery() {
  struct Case {
    std::string name;
    DeformationFamily family;
    Scalar formula;
    bool second;
    Scalar fd_scale;
  };
  std::vector<Case> cases;
  const std::vector<Scalar> steps{8e-3, 4e-3, 2e-3, 1e-3};

  // Circle helpers.
  auto circle_surface = [](Scalar r) { return make_sampled(SphereDesc{1, r}); };
  auto trig_variation = [](const TrigPoly& f, const Eigen::Vector2d& y, Scalar h) {
    VariationData var;
    var.normal_speed = [f](const SurfacePoint& p) {
      return f.eval(std::atan2(p.position(1), p.position(0)));
    };
    var.base_velocity = (Vector(2) << y.x(), y.y()).finished();
    var.scale_velocity = h;
    return var;
  };

  {  // 1: first variation on a critical circle, mixed asymmetric variation.
    const Scalar r = 1.3;
    const LambdaParams params{1.0 / r - r, 1};
    TrigPoly f;
    f.a0 = 0.6;
    f.cos_coeffs = {0.3};
    f.sin_coeffs = {0.0, 0.2};
    const Eigen::Vector2d y(0.1, -0.05);
    const Scalar h = 0.2;
    const Scalar formula = first_variation(circle_surface(r), GaussianFrame::standard(2), params,
                                           trig_variation(f, y, h));
    cases.push_back({"circle r=1.3 mixed (F')", circle_deformation(r, params, f, y, h), formula,
                     false, 1.0});
  }
  {  // 2: first variation on a non-critical circle (formula valid off criticality).
    const Scalar r = 1.0;
    const LambdaParams params{0.3, 1};
    TrigPoly f;
    f.a0 = 0.4;
    f.cos_coeffs = {0.5};
    const Eigen::Vector2d y(0.0, 0.1);
    const Scalar h = -0.15;
    const Scalar formula = first_variation(circle_surface(r), GaussianFrame::standard(2), params,
                                           trig_variation(f, y, h));
    cases.push_back({"circle r=1 lambda=0.3 (F')", circle_deformation(r, params, f, y, h),
                     formula, false, 1.0});
  }
  {  // 3: first variation, unit circle, f = cos theta (symmetric family).
    const LambdaParams params{0.0, 1};
    TrigPoly f;
    f.cos_coeffs = {1.0};
    const Scalar formula = first_variation(circle_surface(1.0), GaussianFrame::standard(2),
                                           params, trig_variation(f, {0.0, 0.0}, 0.0));
    cases.push_back({"circle r=1 f=cos (F')",
                     circle_deformation(1.0, params, f, {0.0, 0.0}, 0.0), formula, false, 1.0});
  }
  {  // 4: first variation on the sphere, f = 1, h = 0.3, y = (0.1,0,0).
    const Scalar r = 1.2;
    const LambdaParams params{2.0 / r - r, 2};
    const SampledSurface surface = make_sampled(SphereDesc{2, r});
    VariationData var;
    var.normal_speed = [](const SurfacePoint&) { return 1.0; };
    var.base_velocity = (Vector(3) << 0.1, 0.0, 0.0).finished();
    var.scale_velocity = 0.3;
    const Scalar formula = first_variation(surface, GaussianFrame::standard(3), params, var);
    cases.push_back({"sphere r=1.2 f=1 h=0.3 (F')",
                     sphere_deformation(SphereDesc{2, r}, params, 1.0,
                                        Vector::Zero(3), var.base_velocity, 0.3),
                     formula, false, 1.0});
  }
  {  // 5: second variation, sphere r=1.6 unstable direction f=<z,N>, y=z.
    const Scalar r = 1.6;
    const LambdaParams params{2.0 / r - r, 2};
    SphereVariation var;
    var.z = (Vector(3) << 1.0, 0.0, 0.0).finished();
    var.k = 1.0;
    const Scalar formula = second_variation_F(SphereDesc{2, r}, params, var).value;
    cases.push_back({"sphere r=1.6 z-mode (F'')",
                     sphere_deformation(SphereDesc{2, r}, params, 0.0, var.z, var.z, 0.0),
                     formula, true, 4.0 * kPi});
  }
  {  // 6: second variation, unit circle, f = 1, h = -2 (exact zero of the form).
    const LambdaParams params{0.0, 1};
    SphereVariation var;
    var.a = 1.0;
    var.h = -2.0;
    const Scalar formula = second_variation_F(SphereDesc{1, 1.0}, params, var).value;
    TrigPoly f;
    f.a0 = 1.0;
    cases.push_back({"circle r=1 a-mode h=-2 (F'')",
                     circle_deformation(1.0, params, f, {0.0, 0.0}, -2.0), formula, true,
                     std::sqrt(4.0 * kPi)});
  }
  {  // 7: second variation, circle in the unstable band, f = <z,N>, y = z.
    const Scalar r = 1.3;
    const LambdaParams params{1.0 / r - r, 1};
    SphereVariation var;
    var.z = (Vector(2) << 1.0, 0.0).finished();
    var.k = 1.0;
    const Scalar formula = second_variation_F(SphereDesc{1, r}, params, var).value;
    TrigPoly f;
    f.cos_coeffs = {-1.0};  // <z,N> = -cos theta for z = e1
    cases.push_back({"circle r=1.3 z-mode (F'')",
                     circle_deformation(r, params, f, {1.0, 0.0}, 0.0), formula, true,
                     std::sqrt(4.0 * kPi)});
  }
  {  // 8: second variation, circle f0 mode cos(2 theta).
    const Scalar r = 0.9;
    const LambdaParams params{1.0 / r - r, 1};
    SphereVariation var;
    var.f0.push_back({circle_harmonic(r, 2, false), 1.0});
    const Scalar formula = second_variation_F(SphereDesc{1, r}, params, var).value;
    TrigPoly f;
    f.cos_coeffs = {0.0, 1.0};
    cases.push_back({"circle r=0.9 cos2t (F'')",
                     circle_deformation(r, params, f, {0.0, 0.0}, 0.0), formula, true,
                     std::sqrt(4.0 * kPi)});
  }

  std::vector<FdBatteryRow> rows;
  for (auto& c : cases) {
    FdBatteryRow row;
    row.name = c.name;
    row.second_order = c.second;
    row.report = c.second ? fd_check_second_variation(c.family, c.formula, steps, c.fd_scale)
                          : fd_check_first_variation(c.family, c.formula, steps);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

CriterionResult criterion_fd_agreement() {
  CriterionResult res{2, "finite-difference agreement of variation formulas", true, ""};
  const auto battery = run_fd_battery();
  std::ostringstream detail;
  int failures = 0;
  for (const auto& row : battery) {
    const Scalar err_at_finest = row.report.errors.back();
    const bool ok = row.report.converged && err_at_finest <= 1e-5;
    if (!ok) ++failures;
    detail << (ok ? "" : "[FAIL] ") << row.name << ": order "
           << (row.report.at_noise_floor ? std::string("round-off") : num(row.report.slope))
           << ", err@1e-3 " << num(err_at_finest) << "; ";
  }
  res.pass = failures == 0;
  res.details = std::to_string(battery.size()) + " families; " + detail.str();
  return res;
}

CriterionResult criterion_f_thresholds() {
  CriterionResult res{3, "F-stability thresholds sqrt(n), sqrt(n+1)", true, ""};
  std::ostringstream detail;
  const Scalar step = 1e-3;
  for (int n : {1, 2, 3, 4}) {
    const ThresholdSet thr = ThresholdSet::for_dimension(n);
    const auto rows =
        threshold_scan(n, 0.80 * thr.f_lower, 1.15 * thr.f_upper, step, StabilityMode::F);
    const auto transitions = scan_transitions(rows);
    bool ok = transitions.size() == 2 &&
              std::abs(transitions[0] - thr.f_lower) <= step + 1e-12 &&
              std::abs(transitions[1] - thr.f_upper) <= step + 1e-12;
    // Boundary semantics: stable at sqrt(n), unstable at sqrt(n+1). The upper
    // endpoint is tested at the largest double not exceeding sqrt(n+1) (the
    // rounded square root may land one ulp past the algebraic boundary, on
    // the stable side).
    Scalar upper = thr.f_upper;
    while (upper * upper > static_cast<Scalar>(n + 1)) upper = std::nextafter(upper, 0.0);
    ok = ok && classify_F(n, thr.f_lower).verdict == Verdict::Stable &&
         classify_F(n, upper).verdict == Verdict::Unstable;
    if (!ok) res.pass = false;
    detail << "n=" << n << ": ";
    if (transitions.size() == 2)
      detail << "found " << num(transitions[0]) << "," << num(transitions[1]);
    else
      detail << transitions.size() << " transitions";
    detail << " vs " << num(thr.f_lower) << "," << num(thr.f_upper) << (ok ? " ok; " : " FAIL; ");
  }
  res.details = detail.str();
  return res;
}

CriterionResult criterion_weak_thresholds() {
  CriterionResult res{4, "weak-stability thresholds (-1+sqrt(1+4n))/2, (1+sqrt(1+4n))/2", true, ""};
  std::ostringstream detail;
  const Scalar step = 1e-3;
  for (int n : {1, 2, 3, 4}) {
    const ThresholdSet thr = ThresholdSet::for_dimension(n);
    const auto rows = threshold_scan(n, 0.80 * thr.weak_lower, 1.15 * thr.weak_upper, step,
                                     StabilityMode::Weak);
    const auto transitions = scan_transitions(rows);
    bool ok = transitions.size() == 2 &&
              std::abs(transitions[0] - thr.weak_lower) <= step + 1e-12 &&
              std::abs(transitions[1] - thr.weak_upper) <= step + 1e-12;
    // Both endpoints are closed (stable).
    ok = ok && classify_weak(n, thr.weak_lower).verdict == Verdict::Stable &&
         classify_weak(n, thr.weak_upper).verdict == Verdict::Stable &&
         classify_weak(n, 0.5 * (thr.weak_lower + thr.weak_upper)).verdict == Verdict::Unstable;
    if (n == 2)
      ok = ok && std::abs(thr.weak_lower - 1.0) < 1e-15 && std::abs(thr.weak_upper - 2.0) < 1e-15;
    if (!ok) res.pass = false;
    detail << "n=" << n << ": ";
    if (transitions.size() == 2)
      detail << "found " << num(transitions[0]) << "," << num(transitions[1]);
    else
      detail << transitions.size() << " transitions";
    detail << " vs " << num(thr.weak_lower) << "," << num(thr.weak_upper)
           << (ok ? " ok; " : " FAIL; ");
  }
  res.details = detail.str();
  return res;
}

CriterionResult criterion_identity_suites() {
  CriterionResult res{5, "drift/integral/integration-by-parts identity suites", true, ""};
  Scalar worst_drift = 0.0, worst_integral = 0.0, worst_ibp = 0.0;

  for (const auto& row : run_identity_matrix()) {
    if (row.report.name.starts_with("lemma2.1"))
      worst_drift = std::max(worst_drift, row.report.residual);
    else
      worst_integral = std::max(worst_integral, row.report.residual);
  }

  {  // Five-pair integration-by-parts battery (plus a cylinder corollary case).
    auto run_pair = [&](const SurfaceDescriptor& desc, const SurfaceField& u,
                        const SurfaceField& v) {
      const auto pts = sample_surface(desc);
      worst_ibp = std::max(worst_ibp, integration_by_parts_residual(pts, u, v));
    };
    Vector e0_3 = (Vector(3) << 1.0, 0.0, 0.0).finished();
    Vector e0_2 = (Vector(2) << 1.0, 0.0).finished();
    const SurfaceDescriptor s15 = SphereDesc{2, 1.5};
    run_pair(s15, normal_linear_field(s15, e0_3), normal_linear_field(s15, e0_3));
    const SurfaceDescriptor s09 = SphereDesc{2, 0.9};
    run_pair(s09, constant_field(1.0, 3), normal_linear_field(s09, e0_3));
    run_pair(SphereDesc{1, 1.0}, linear_field(e0_2), linear_field(e0_2));
    const SurfaceDescriptor s12 = SphereDesc{2, 1.2};
    run_pair(s12, linear_field(e0_3), normal_linear_field(s12, e0_3));
    const HarmonicField c2h = circle_harmonic(0.8, 2, false);
    run_pair(SphereDesc{1, 0.8}, c2h.field, c2h.field);
    const SurfaceDescriptor cyl = CylinderDesc{1, 2, 1.0};
    run_pair(cyl, normal_linear_field(cyl, e0_3), normal_linear_field(cyl, e0_3));
  }

  res.pass = worst_drift <= 1e-8 && worst_integral <= 1e-6 && worst_ibp <= 1e-7;
  res.details = "max drift residual " + num(worst_drift) + " (tol 1e-8); max integral residual " +
                num(worst_integral) + " (tol 1e-6); max ibp residual " + num(worst_ibp) +
                " (tol 1e-7)";
  return res;
}

CriterionResult criterion_flow_conservation() {
  CriterionResult res{6, "flow conservation and stationarity", true, ""};
  std::ostringstream detail;

  auto perturbed_circle = [](int markers) {
    CurveDesc curve;
    for (int i = 0; i < markers; ++i) {
      const Scalar t = 2.0 * kPi * i / markers;
      const Scalar rho = 1.0 + 0.05 * std::cos(3.0 * t);
      curve.points.emplace_back(rho * std::cos(t), rho * std::sin(t));
    }
    return curve;
  };

  {  // Reference run: 512 markers, RK4, dt = 1e-4, 1e4 steps.
    FlowRunParams p;
    p.dt = 1e-4;
    p.steps = 10000;
    p.scheme = FlowScheme::Rk4;
    p.trace_stride = 500;
    const FlowTrace trace = run(perturbed_circle(512), p);
    Scalar drift = 0.0;
    const Scalar v0 = trace.rows.front().weighted_volume;
    for (const auto& row : trace.rows)
      drift = std::max(drift, std::abs(row.weighted_volume - v0) / std::abs(v0));
    const bool ok = !trace.halted && drift <= 1e-5;
    if (!ok) res.pass = false;
    detail << "RK4 |V-V0|/|V0| = " << num(drift) << " (tol 1e-5)" << (ok ? "; " : " FAIL; ");
  }

  // dt sweep. V is linear in the markers and every stage velocity has zero
  // frozen-normal projection, so explicit schemes conserve V to round-off;
  // the sweep passes either via the measured order or via that exactness.
  for (FlowScheme scheme : {FlowScheme::Rk4, FlowScheme::Euler}) {
    std::vector<Scalar> drifts;
    for (Scalar dt : {8e-4, 4e-4, 2e-4}) {
      FlowRunParams p;
      p.dt = dt;
      p.steps = static_cast<int>(std::lround(0.08 / dt));
      p.scheme = scheme;
      p.trace_stride = p.steps;
      const FlowTrace trace = run(perturbed_circle(128), p);
      Scalar drift = 0.0;
      const Scalar v0 = trace.rows.front().weighted_volume;
      for (const auto& row : trace.rows)
        drift = std::max(drift, std::abs(row.weighted_volume - v0) / std::abs(v0));
      drifts.push_back(drift);
    }
    const bool exact = drifts[0] <= 1e-12 && drifts[1] <= 1e-12 && drifts[2] <= 1e-12;
    Scalar order = 0.0;
    if (!exact)
      order = 0.5 * (std::log2(drifts[0] / drifts[1]) + std::log2(drifts[1] / drifts[2]));
    const bool is_rk4 = scheme == FlowScheme::Rk4;
    const bool ok = exact || (is_rk4 ? order >= 3.5 : (order >= 0.7 && order <= 1.3));
    if (!ok) res.pass = false;
    detail << (is_rk4 ? "RK4" : "Euler") << " sweep drifts "
           << num(drifts[0]) << "/" << num(drifts[1]) << "/" << num(drifts[2])
           << (exact ? " (exact to round-off)" : (" order " + num(order)))
           << (ok ? "; " : " FAIL; ");
  }

  {  // Circles are stationary (dt within the explicit parabolic limit
     // dt <~ 2.8 h^2 / 4 for the marker spacing h, per the flow defaults).
    FlowRunParams p;
    p.dt = 1e-4;
    p.steps = 1000;
    p.scheme = FlowScheme::Rk4;
    p.trace_stride = 100;
    QuadratureSpec spec;
    spec.circle_points = 512;
    p.quad = spec;
    const FlowTrace trace = run(SphereDesc{1, 1.0}, p);
    const Scalar disp = trace.rows.back().max_displacement;
    const bool ok = !trace.halted && disp <= 1e-10;
    if (!ok) res.pass = false;
    detail << "circle max displacement " << num(disp) << " (tol 1e-10)" << (ok ? "" : " FAIL");
  }

  res.details = detail.str();
  return res;
}

CriterionResult criterion_growth_sharpness() {
  CriterionResult res{7, "area growth upper bound is sharp on cylinders", true, ""};
  std::ostringstream detail;
  const std::vector<CylinderDesc> cylinders = {
      {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, std::sqrt(2.0)}, {1, 3, 0.7}};
  for (const auto& cyl : cylinders) {
    const GrowthProfile profile = growth_exponent(cyl, 2.0, 64.0, 48);
    const Scalar expected = cyl.n - cyl.k;
    const bool ok = std::abs(profile.fitted_exponent - profile.bound_exponent) <= 0.05 &&
                    std::abs(profile.bound_exponent - expected) <= 1e-10;
    if (!ok) res.pass = false;
    detail << "(" << cyl.k << "," << cyl.n << "," << num(cyl.r0) << "): fitted "
           << num(profile.fitted_exponent) << " bound " << num(profile.bound_exponent)
           << (ok ? " ok; " : " FAIL; ");
  }
  res.details = detail.str();
  return res;
}

CriterionResult criterion_linear_lower_bound() {
  CriterionResult res{8, "linear lower bound of area growth", true, ""};
  std::ostringstream detail;
  const std::vector<std::pair<SurfaceDescriptor, std::string>> surfaces = {
      {CylinderDesc{1, 2, 1.0}, "cyl(1,2,1)"},
      {CylinderDesc{1, 3, 1.0}, "cyl(1,3,1)"},
      {CylinderDesc{2, 3, std::sqrt(2.0)}, "cyl(2,3,sqrt2)"},
      {CylinderDesc{1, 3, 0.7}, "cyl(1,3,0.7)"},
      {PlaneDesc{2}, "plane n=2"}};
  for (const auto& [desc, name] : surfaces) {
    const LinearLowerBound bound = linear_lower_bound_check(desc, 4.0, 64.0, 61);
    if (!bound.pass) res.pass = false;
    detail << name << " min A/r = " << num(bound.min_area_over_r)
           << (bound.pass ? "; " : " FAIL; ");
  }
  // Equality case: S^{n-1} x R cylinders have fitted exponent 1.
  for (const auto& cyl : {CylinderDesc{1, 2, 1.0}, CylinderDesc{2, 3, std::sqrt(2.0)}}) {
    const GrowthProfile profile = growth_exponent(cyl, 2.0, 64.0, 48);
    const bool ok = std::abs(profile.fitted_exponent - 1.0) <= 0.02;
    if (!ok) res.pass = false;
    detail << "S^" << cyl.k << "xR fitted " << num(profile.fitted_exponent)
           << (ok ? " ok; " : " FAIL; ");
  }
  res.details = detail.str();
  return res;
}

CriterionResult criterion_annulus() {
  CriterionResult res{9, "annulus growth ratios bounded, doubling for t >= 5", true, ""};
  std::ostringstream detail;
  const std::vector<std::pair<SurfaceDescriptor, std::string>> surfaces = {
      {CylinderDesc{1, 2, 1.0}, "cyl(1,2,1)"},
      {CylinderDesc{1, 3, 1.0}, "cyl(1,3,1)"},
      {CylinderDesc{2, 3, std::sqrt(2.0)}, "cyl(2,3,sqrt2)"},
      {CylinderDesc{1, 3, 0.7}, "cyl(1,3,0.7)"},
      {PlaneDesc{2}, "plane n=2"}};
  for (const auto& [desc, name] : surfaces) {
    const AnnulusReport report = annulus_check(desc, 2, 64);
    bool doubling_ok = true;
    for (std::size_t i = 0; i < report.t.size(); ++i)
      if (report.t[i] >= 5 && !(report.valid[i] && report.doubling[i])) doubling_ok = false;
    const bool ok = doubling_ok && std::isfinite(report.max_ratio) && report.max_ratio <= 8.0;
    if (!ok) res.pass = false;
    detail << name << " max ratio " << num(report.max_ratio) << (ok ? "; " : " FAIL; ");
  }
  res.details = detail.str();
  return res;
}

CriterionResult criterion_log_sobolev() {
  CriterionResult res{10, "log-Sobolev battery admits a single finite C1(n)", true, ""};
  std::ostringstream detail;
  for (int n : {1, 2}) {
    const std::vector<Scalar> radii =
        n == 1 ? std::vector<Scalar>{0.7, 1.0, 1.5} : std::vector<Scalar>{0.8, 1.0, 1.5};
    auto group_c1 = [&](const QuadratureSpec& spec) {
      Scalar c1 = -std::numeric_limits<Scalar>::infinity();
      for (Scalar r : radii) {
        const SurfaceDescriptor desc = SphereDesc{n, r};
        const SampledSurface surface = make_sampled(desc, spec);
        const LambdaParams params{*canonical_lambda(desc), n};
        const auto battery = standard_log_sobolev_battery(desc);
        const LogSobolevReport rep = log_sobolev_check(surface, params, battery);
        c1 = std::max(c1, rep.minimal_c1);
      }
      return c1;
    };
    QuadratureSpec reference;
    QuadratureSpec fine = reference;
    fine.circle_points *= 2;
    fine.sphere_polar *= 2;
    fine.sphere_azimuth *= 2;
    const Scalar c1_ref = group_c1(reference);
    const Scalar c1_fine = group_c1(fine);
    const bool ok = std::isfinite(c1_ref) && std::abs(c1_ref - c1_fine) <= 1e-3;
    if (!ok) res.pass = false;
    detail << "n=" << n << ": minimal C1 = " << num(c1_ref) << ", resolution shift "
           << num(std::abs(c1_ref - c1_fine)) << (ok ? "; " : " FAIL; ");
  }
  res.details = detail.str();
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_matrix(unsigned seed) {
  return {
      criterion_criticality(seed),  criterion_fd_agreement(),     criterion_f_thresholds(),
      criterion_weak_thresholds(),  criterion_identity_suites(),  criterion_flow_conservation(),
      criterion_growth_sharpness(), criterion_linear_lower_bound(), criterion_annulus(),
      criterion_log_sobolev(),
  };
}

std::string acceptance_report_json(const std::vector<CriterionResult>& criteria, unsigned seed) {
  nlohmann::json rows = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& c : criteria) {
    all_pass = all_pass && c.pass;
    rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  }
  const nlohmann::json report{{"criteria", rows}, {"all_pass", all_pass}, {"seed", seed}};
  return report.dump(2);
}

}  // namespace lsl
