#include "lsl/flow.hpp"

#include <cmath>

namespace lsl {

namespace {

Scalar mean_spacing(const std::vector<Eigen::Vector2d>& pts) {
  Scalar total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    total += (pts[(i + 1) % pts.size()] - pts[i]).norm();
  return total / pts.size();
}

}  // namespace

FlowState make_flow_state(const SurfaceDescriptor& desc, const QuadratureSpec& spec) {
  FlowState state;
  const auto points = sample_surface(desc, spec);
  const int n = surface_dim(desc);
  if (std::get_if<CurveDesc>(&desc) || (std::get_if<SphereDesc>(&desc) && n == 1)) {
    state.n = 1;
    state.is_curve = true;
  } else if (std::get_if<SphereDesc>(&desc) && n == 2) {
    state.n = 2;
    state.is_curve = false;
  } else {
    throw std::invalid_argument("make_flow_state: flow supports planar curves and spheres");
  }
  state.initial_normals.reserve(points.size());
  state.initial_positions.reserve(points.size());
  state.initial_weights.reserve(points.size());
  for (const auto& p : points) {
    state.initial_normals.push_back(p.normal);
    state.initial_positions.push_back(p.position);
    state.initial_weights.push_back(std::exp(-0.5 * p.position.squaredNorm()) * p.area_weight);
    if (state.is_curve)
      state.curve_markers.emplace_back(p.position(0), p.position(1));
    else
      state.cloud_markers.push_back(p.position);
  }
  if (state.is_curve) state.initial_mean_spacing = mean_spacing(state.curve_markers);
  state.v0 = weighted_volume_frozen(state);
  state.alpha = flow_velocity(state).second;
  return state;
}

FlowGeometry flow_geometry(const FlowState& state) {
  FlowGeometry geom;
  if (state.is_curve) {
    std::vector<SurfacePoint> pts;
    try {
      pts = curvature_of_polyline(state.curve_markers);
    } catch (const std::invalid_argument& e) {
      throw FlowHalt(std::string("degenerate polyline: ") + e.what());
    }
    geom.normals.reserve(pts.size());
    geom.mean_curvature.reserve(pts.size());
    geom.area_weight.reserve(pts.size());
    for (const auto& p : pts) {
      geom.normals.push_back(p.normal);
      geom.mean_curvature.push_back(p.mean_curvature);
      geom.area_weight.push_back(p.area_weight);
    }
    return geom;
  }
  // Sphere marker cloud: geometry of the best-fit sphere (weighted centroid
  // center, per-marker radius). Exact for clouds sampled from round spheres,
  // which is the supported n = 2 flow regime.
  const std::size_t m = state.cloud_markers.size();
  Vector center = Vector::Zero(state.n + 1);
  Scalar wsum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    center += state.initial_weights[i] * state.cloud_markers[i];
    wsum += state.initial_weights[i];
  }
  center /= wsum;
  Scalar rho0_mean = 0.0, rho_mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    rho_mean += (state.cloud_markers[i] - center).norm();
    rho0_mean += state.initial_positions[i].norm();
  }
  rho_mean /= m;
  rho0_mean /= m;
  const Scalar scale = std::pow(rho_mean / rho0_mean, state.n);
  geom.normals.resize(m);
  geom.mean_curvature.resize(m);
  geom.area_weight.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector d = state.cloud_markers[i] - center;
    const Scalar rho = d.norm();
    if (rho < 1e-12) throw FlowHalt("sphere cloud collapsed to its center");
    geom.normals[i] = -d / rho;
    geom.mean_curvature[i] = state.n / rho;
    // Initial unweighted area weight recovered from the frozen product.
    const Scalar w0 = state.initial_weights[i] *
                      std::exp(0.5 * state.initial_positions[i].squaredNorm());
    geom.area_weight[i] = w0 * scale;
  }
  return geom;
}

std::pair<std::vector<Vector>, Scalar> flow_velocity(const FlowState& state) {
  const FlowGeometry geom = flow_geometry(state);
  const std::size_t m = geom.normals.size();
  std::vector<Scalar> num(m), den(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar align = geom.normals[i].dot(state.initial_normals[i]);
    num[i] = geom.mean_curvature[i] * align * state.initial_weights[i];
    den[i] = align * state.initial_weights[i];
  }
  const Scalar numer = pairwise_sum(num);
  const Scalar denom = pairwise_sum(den);
  Scalar wabs = 0.0;
  for (Scalar w : state.initial_weights) wabs += std::abs(w);
  if (std::abs(denom) < 1e-10 * wabs)
    throw FlowHalt("alpha denominator collapsed (normals nearly orthogonal to initial data)");
  const Scalar alpha = numer / denom;
  std::vector<Vector> vel(m);
  for (std::size_t i = 0; i < m; ++i)
    vel[i] = (geom.mean_curvature[i] - alpha) * geom.normals[i];
  return {std::move(vel), alpha};
}

namespace {

FlowState displaced(const FlowState& base, const std::vector<Vector>& delta, Scalar factor) {
  FlowState s = base;
  if (s.is_curve) {
    for (std::size_t i = 0; i < s.curve_markers.size(); ++i)
      s.curve_markers[i] += factor * Eigen::Vector2d(delta[i](0), delta[i](1));
  } else {
    for (std::size_t i = 0; i < s.cloud_markers.size(); ++i)
      s.cloud_markers[i] += factor * delta[i];
  }
  return s;
}

void check_marker_spacing(const FlowState& state) {
  if (!state.is_curve) return;
  const auto& pts = state.curve_markers;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Scalar d = (pts[(i + 1) % pts.size()] - pts[i]).norm();
    if (d < 1e-8 * state.initial_mean_spacing)
      throw FlowHalt("marker distance collapsed at index " + std::to_string(i));
  }
}

}  // namespace

FlowState step(const FlowState& state, Scalar dt, FlowScheme scheme) {
  if (dt <= 0.0) throw std::invalid_argument("flow step: dt must be positive");
  FlowState next = state;
  if (scheme == FlowScheme::Euler) {
    auto [v, alpha] = flow_velocity(state);
    next = displaced(state, v, dt);
    next.alpha = alpha;
  } else {
    auto [k1, alpha] = flow_velocity(state);
    auto [k2, a2] = flow_velocity(displaced(state, k1, 0.5 * dt));
    auto [k3, a3] = flow_velocity(displaced(state, k2, 0.5 * dt));
    auto [k4, a4] = flow_velocity(displaced(state, k3, dt));
    (void)a2; (void)a3; (void)a4;
    std::vector<Vector> combo(k1.size());
    for (std::size_t i = 0; i < k1.size(); ++i)
      combo[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    next = displaced(state, combo, dt);
    next.alpha = alpha;
  }
  next.time = state.time + dt;
  check_marker_spacing(next);
  return next;
}

Scalar weighted_volume_frozen(const FlowState& state) {
  const std::size_t m = state.initial_weights.size();
  std::vector<Scalar> contrib(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector x = state.is_curve
                         ? (Vector(2) << state.curve_markers[i].x(),
                            state.curve_markers[i].y()).finished()
                         : state.cloud_markers[i];
    contrib[i] = x.dot(state.initial_normals[i]) * state.initial_weights[i];
  }
  return pairwise_sum(contrib);
}

namespace {

TraceRow trace_row(const FlowState& state) {
  TraceRow row;
  row.time = state.time;
  row.alpha = state.alpha;
  row.weighted_volume = weighted_volume_frozen(state);
  const FlowGeometry geom = flow_geometry(state);
  Scalar area = 0.0;
  for (Scalar w : geom.area_weight) area += w;
  row.area = area;
  Scalar disp = 0.0;
  for (std::size_t i = 0; i < state.initial_positions.size(); ++i) {
    const Vector x = state.is_curve
                         ? (Vector(2) << state.curve_markers[i].x(),
                            state.curve_markers[i].y()).finished()
                         : state.cloud_markers[i];
    disp = std::max(disp, (x - state.initial_positions[i]).norm());
  }
  row.max_displacement = disp;
  return row;
}

// Arc-length redistribution for curves: equally spaced markers along the
// current polygon, frozen data re-interpolated linearly by arc parameter.
void redistribute(FlowState& state) {
  if (!state.is_curve) return;
  const auto& pts = state.curve_markers;
  const std::size_t m = pts.size();
  std::vector<Scalar> seg(m), cum(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    seg[i] = (pts[(i + 1) % m] - pts[i]).norm();
    cum[i + 1] = cum[i] + seg[i];
  }
  const Scalar total = cum[m];
  std::vector<Eigen::Vector2d> new_pts(m);
  std::vector<Vector> new_normals(m), new_positions(m);
  std::vector<Scalar> new_weights(m);
  std::size_t j = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar target = total * i / m;
    while (j + 1 < m && cum[j + 1] < target) ++j;
    const Scalar local = seg[j] > 0.0 ? (target - cum[j]) / seg[j] : 0.0;
    const std::size_t jn = (j + 1) % m;
    new_pts[i] = (1.0 - local) * pts[j] + local * pts[jn];
    Vector nrm = (1.0 - local) * state.initial_normals[j] + local * state.initial_normals[jn];
    const Scalar nn = nrm.norm();
    new_normals[i] = nn > 0.0 ? Vector(nrm / nn) : state.initial_normals[j];
    new_positions[i] =
        (1.0 - local) * state.initial_positions[j] + local * state.initial_positions[jn];
    new_weights[i] = (1.0 - local) * state.initial_weights[j] + local * state.initial_weights[jn];
  }
  state.curve_markers = std::move(new_pts);
  state.initial_normals = std::move(new_normals);
  state.initial_positions = std::move(new_positions);
  state.initial_weights = std::move(new_weights);
}

}  // namespace

FlowTrace run(const SurfaceDescriptor& desc, const FlowRunParams& params) {
  FlowTrace trace;
  FlowState state = make_flow_state(desc, params.quad);
  trace.rows.push_back(trace_row(state));
  for (int i = 1; i <= params.steps; ++i) {
    try {
      state = step(state, params.dt, params.scheme);
      if (params.redistribute_every > 0 && i % params.redistribute_every == 0)
        redistribute(state);
    } catch (const FlowHalt& halt) {
      trace.halted = true;
      trace.halt_reason = halt.what();
      break;
    }
    if (params.trace_stride > 0 && (i % params.trace_stride == 0 || i == params.steps))
      trace.rows.push_back(trace_row(state));
  }
  return trace;
}

}  // namespace lsl
