#pragma once

#include <vector>

namespace rggeo {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule (n >= 1), exact for polynomials of degree 2n - 1.
/// Nodes are the roots of P_n found by Newton iteration. Thread-safe.
const QuadratureRule& gauss_legendre(int n);

}  // namespace rggeo
