#pragma once

#include "lsl/common.hpp"

namespace lsl {

struct Rule1d {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
};

/// Gauss-Legendre rule on [-1, 1] (weight 1).
Rule1d gauss_legendre(int m);

/// Gauss-Legendre rule mapped to [a, b].
Rule1d gauss_legendre(int m, Scalar a, Scalar b);

/// Gauss-Chebyshev rule of the first kind: weight (1-u^2)^{-1/2} on [-1, 1].
Rule1d gauss_chebyshev1(int m);

/// Gauss-Chebyshev rule of the second kind: weight (1-u^2)^{1/2} on [-1, 1].
Rule1d gauss_chebyshev2(int m);

/// Uniform periodic (trapezoid) rule covering [0, period).
Rule1d uniform_periodic(int m, Scalar period);

}  // namespace lsl
