#include "lsl/gauss.hpp"

#include <cmath>
#include <thread>

namespace lsl {

Scalar unit_sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("unit_sphere_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

Scalar unit_ball_volume(int m) {
  if (m < 0) throw std::invalid_argument("unit_ball_volume: m must be >= 0");
  return std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

Scalar sphere_normal_even_moment(int n, std::span<const int> even_exponents) {
  int total = 0;
  Scalar num = 1.0;
  for (int a : even_exponents) {
    if (a < 0) throw std::invalid_argument("sphere_normal_even_moment: negative exponent");
    for (int j = 1; j < 2 * a; j += 2) num *= static_cast<Scalar>(j);  // (2a-1)!!
    total += a;
  }
  Scalar den = 1.0;
  for (int j = 0; j < total; ++j) den *= static_cast<Scalar>(n + 1 + 2 * j);
  return num / den;
}

Scalar pairwise_sum(std::span<const Scalar> values) {
  const std::size_t m = values.size();
  if (m <= 8) {
    Scalar s = 0.0;
    for (Scalar v : values) s += v;
    return s;
  }
  const std::size_t half = m / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int thread_budget() {
  static const int budget = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("LSL_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1 && v < 1024) hw = std::min<long>(hw, v);
    }
    return hw;
  }();
  return budget;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int workers = thread_budget();
  if (workers <= 1 || count < 2048) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

Rule1d gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m must be >= 1");
  Rule1d rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Scalar x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    Scalar dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_m(x) and P'_m(x).
      Scalar p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        Scalar p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    Scalar w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

Rule1d gauss_legendre(int m, Scalar a, Scalar b) {
  Rule1d base = gauss_legendre(m);
  const Scalar mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    base.nodes[i] = mid + half * base.nodes[i];
    base.weights[i] *= half;
  }
  return base;
}

Rule1d gauss_chebyshev1(int m) {
  Rule1d rule;
  rule.nodes.resize(m);
  rule.weights.assign(m, kPi / m);
  for (int i = 0; i < m; ++i) rule.nodes[i] = std::cos(kPi * (2.0 * i + 1.0) / (2.0 * m));
  return rule;
}

Rule1d gauss_chebyshev2(int m) {
  Rule1d rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 1; i <= m; ++i) {
    const Scalar t = kPi * i / (m + 1.0);
    rule.nodes[i - 1] = std::cos(t);
    rule.weights[i - 1] = kPi / (m + 1.0) * std::sin(t) * std::sin(t);
  }
  return rule;
}

Rule1d uniform_periodic(int m, Scalar period) {
  Rule1d rule;
  rule.nodes.resize(m);
  rule.weights.assign(m, period / m);
  for (int i = 0; i < m; ++i) rule.nodes[i] = period * i / m;
  return rule;
}

}  // namespace lsl
