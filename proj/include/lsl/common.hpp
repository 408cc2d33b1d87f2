#pragma once

#include <Eigen/Dense>

#include <cstdlib>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsl {

using Scalar = double;
using Vector = Eigen::VectorXd;

inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

/// Gaussian window e^{-|X - center|^2 / (2 scale)} attached to the weighted
/// functionals; the default frame is centered at the origin with unit scale.
struct GaussianFrame {
  Vector center;
  Scalar scale = 1.0;

  static GaussianFrame standard(int ambient_dim) {
    GaussianFrame f;
    f.center = Vector::Zero(ambient_dim);
    f.scale = 1.0;
    return f;
  }
};

struct LambdaParams {
  Scalar lambda = 0.0;
  int n = 2;
};

/// Area of the unit n-sphere S^n in R^{n+1}.
Scalar unit_sphere_area(int n);

/// Volume of the unit m-ball in R^m (V_0 = 1).
Scalar unit_ball_volume(int m);

/// E[prod_i N_i^{2a_i}] for N uniform on S^n in R^{n+1}:
/// prod (2a_i - 1)!! / prod_{j=0}^{A-1} (n + 1 + 2j), A = sum a_i.
Scalar sphere_normal_even_moment(int n, std::span<const int> even_exponents);

/// Deterministic pairwise summation (order-independent of thread count).
Scalar pairwise_sum(std::span<const Scalar> values);

/// Worker count: min(hardware_concurrency, LSL_THREADS if set), at least 1.
int thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads.
/// Work is index-partitioned so writes to index-addressed buffers are safe.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lsl
