#pragma once

#include "lsl/common.hpp"

#include <optional>
#include <variant>

namespace lsl {

/// One quadrature sample of a hypersurface in R^{n+1}. The orientation is
/// fixed so a round sphere has N = -X/r and H = n/r (inward normal, positive
/// mean curvature on convex surfaces); the mean curvature vector is H * N.
struct SurfacePoint {
  Vector position;
  Vector normal;
  Scalar mean_curvature = 0.0;             // H, sum of principal curvatures
  Scalar second_fundamental_norm_sq = 0.0;  // S = sum of squared principal curvatures
  Scalar area_weight = 0.0;                // quadrature weight approximating dmu
};

struct SphereDesc {
  int n = 2;       // S^n(r) in R^{n+1}, centered at the origin
  Scalar r = 1.0;
};

struct CylinderDesc {
  int k = 1;               // S^k(r0) x R^{n-k} in R^{n+1}
  int n = 2;
  Scalar r0 = 1.0;
  Scalar half_length = 10.0;  // axial truncation for quadrature
};

struct PlaneDesc {
  int n = 2;  // spanned by e_1..e_n, normal e_{n+1}, through the origin
};

struct CurveDesc {
  std::vector<Eigen::Vector2d> points;  // closed planar polyline
};

struct ProfileDesc {
  std::vector<Eigen::Vector2d> points;  // closed (rho, z) profile, rho > 0
  int n = 2;                            // revolved about the z-axis (n = 2 only)
};

using SurfaceDescriptor = std::variant<SphereDesc, CylinderDesc, PlaneDesc, CurveDesc, ProfileDesc>;

struct QuadratureSpec {
  int circle_points = 1024;   // uniform samples for n = 1 spheres
  int sphere_polar = 32;      // Gauss-Legendre nodes in cos(theta) for S^2
  int sphere_azimuth = 64;
  int sphere_chebyshev = 24;  // Gauss-Chebyshev-2 nodes for the extra S^3 angle
  int cylinder_angular = 128; // circle-factor resolution for k = 1 cylinders
  int axial_points = 40;      // Gauss-Legendre per axial dimension on [-L, L]
  int plane_radial = 80;      // Gauss-Legendre on [0, L]
  int plane_azimuth = 64;
  Scalar half_length = 10.0;  // default truncation; CylinderDesc overrides

  QuadratureSpec halved() const;
};

/// Intrinsic dimension n of the surface.
int surface_dim(const SurfaceDescriptor& desc);

/// Ambient dimension n + 1.
int ambient_dim(const SurfaceDescriptor& desc);

/// Canonical lambda = H + <X,N> for descriptors where it is constant
/// (sphere: n/r - r, cylinder: k/r0 - r0, plane: 0).
std::optional<Scalar> canonical_lambda(const SurfaceDescriptor& desc);

std::vector<SurfacePoint> sample_surface(const SurfaceDescriptor& desc,
                                         const QuadratureSpec& spec = {});

/// Descriptor plus its samples; carries n so weighted functionals can apply
/// the (4 pi t0)^{-n/2} normalization.
struct SampledSurface {
  SurfaceDescriptor desc;
  int n = 0;
  std::vector<SurfacePoint> points;
};

SampledSurface make_sampled(const SurfaceDescriptor& desc, const QuadratureSpec& spec = {});

struct ResidualStats {
  Scalar linf = 0.0;  // max over samples
  Scalar l2 = 0.0;    // area-weighted RMS
};

/// Statistics of |<X,N> + H - lambda| over the samples; ~0 identifies a
/// lambda-hypersurface.
ResidualStats lambda_residual(std::span<const SurfacePoint> points, const LambdaParams& params);
ResidualStats lambda_residual(const SurfaceDescriptor& desc, const LambdaParams& params,
                              const QuadratureSpec& spec = {});

/// Discrete geometry of a closed polyline: turning-angle curvature
/// kappa_i = theta_i / ((|e_{i-1}| + |e_i|)/2), weight = mean adjacent edge
/// length, normal = 90-degree rotation of the unit tangent (counterclockwise
/// circles get the inward normal).
std::vector<SurfacePoint> curvature_of_polyline(std::span<const Eigen::Vector2d> markers);

/// A scalar function on a surface with analytically supplied tangential
/// gradient and Laplace-Beltrami value. The drift operator is
/// Lf = laplacian - <X, gradient>.
struct SurfaceField {
  std::function<Scalar(const SurfacePoint&)> value;
  std::function<Vector(const SurfacePoint&)> gradient;
  std::function<Scalar(const SurfacePoint&)> laplacian;
};

Scalar drift_laplacian(const SurfaceField& f, const SurfacePoint& p);

SurfaceField constant_field(Scalar c, int ambient);

/// <X,a>: gradient a - <a,N>N and laplacian H<N,a> hold on any hypersurface.
SurfaceField linear_field(const Vector& a);

/// |X|^2: gradient 2(X - <X,N>N), laplacian 2(n + H <X,N>).
SurfaceField radius_sq_field(int n);

/// <N,a>: gradient/laplacian supplied per descriptor kind (spheres,
/// cylinders, planes; constant-H surfaces only).
SurfaceField normal_linear_field(const SurfaceDescriptor& desc, const Vector& a);

/// Restriction of a homogeneous harmonic polynomial (or trig mode for n = 1)
/// to a sphere: an eigenfunction of the Laplacian with known degree and norm.
struct HarmonicField {
  int degree = 0;
  SurfaceField field;
  Scalar norm_sq = 0.0;  // integral of the square over the sphere, unweighted
  std::string name;
};

/// cos(k theta + phase pi/2) modes on the circle S^1(r).
HarmonicField circle_harmonic(Scalar r, int k, bool sine);

/// Low-degree harmonics on S^2(r): degree 2 variants {xy, yz, xz, x^2-y^2},
/// degree 3 variant {xyz}.
HarmonicField sphere2_harmonic(Scalar r, int degree, int variant);

/// x_i x_j (i != j) degree-2 harmonic on S^n(r) for any n >= 1.
HarmonicField sphere_pair_harmonic(int n, Scalar r, int i, int j);

/// Eigenvalue mu_k = (k^2 + (n-1)k) / r^2 of the Laplacian on S^n(r).
Scalar sphere_laplace_eigenvalue(int n, Scalar r, int k);

}  // namespace lsl
