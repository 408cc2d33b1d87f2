#pragma once

#include "lsl/surface.hpp"

namespace lsl {

enum class FlowScheme { Euler, Rk4 };

/// Thrown when the flow must stop (degenerate geometry, alpha denominator
/// collapse, marker collapse); run() converts it into a truncated trace.
struct FlowHalt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lagrangian marker state of the weighted volume-preserving flow
/// dX/dt = (H(t) - alpha(t)) N(t). The nonlocal coefficient
///   alpha(t) = int H(t) <N(t), N> w dmu / int <N(t), N> w dmu
/// and the conserved volume V(t) = int <X(t), N> w dmu integrate against the
/// initial immersion: N and w = e^{-|X(0)|^2/2} dmu(0) stay frozen.
struct FlowState {
  int n = 1;            // 1: planar curve markers, 2: sphere marker cloud
  bool is_curve = true;
  std::vector<Eigen::Vector2d> curve_markers;
  std::vector<Vector> cloud_markers;          // n = 2 case
  std::vector<Vector> initial_normals;
  std::vector<Vector> initial_positions;
  std::vector<Scalar> initial_weights;        // e^{-|X0|^2/2} * area_weight
  Scalar initial_mean_spacing = 0.0;          // curves only
  Scalar time = 0.0;
  Scalar alpha = 0.0;
  Scalar v0 = 0.0;  // V(0)
};

FlowState make_flow_state(const SurfaceDescriptor& desc, const QuadratureSpec& spec = {});

/// Current geometry recomputed from marker positions (polyline turning angles
/// for curves, best-fit sphere for sphere clouds).
struct FlowGeometry {
  std::vector<Vector> normals;
  std::vector<Scalar> mean_curvature;
  std::vector<Scalar> area_weight;
};

FlowGeometry flow_geometry(const FlowState& state);

/// Per-marker velocities (H - alpha) N at the current state; also reports
/// alpha. Throws FlowHalt if the alpha denominator degenerates.
std::pair<std::vector<Vector>, Scalar> flow_velocity(const FlowState& state);

FlowState step(const FlowState& state, Scalar dt, FlowScheme scheme);

/// V(t) = sum <X_p(t), N_p(0)> w_p(0): linear in the marker positions, hence
/// conserved to round-off by any explicit Runge-Kutta step (every stage
/// velocity satisfies sum <v, N0> w0 = 0 by the definition of alpha).
Scalar weighted_volume_frozen(const FlowState& state);

struct TraceRow {
  Scalar time = 0.0;
  Scalar alpha = 0.0;
  Scalar weighted_volume = 0.0;
  Scalar area = 0.0;
  Scalar max_displacement = 0.0;
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  bool halted = false;
  std::string halt_reason;
};

struct FlowRunParams {
  Scalar dt = 1e-4;
  int steps = 10000;
  FlowScheme scheme = FlowScheme::Rk4;
  int trace_stride = 100;
  int redistribute_every = 0;  // curves: arc-length redistribution (0 = off)
  QuadratureSpec quad;
};

FlowTrace run(const SurfaceDescriptor& desc, const FlowRunParams& params);

}  // namespace lsl
