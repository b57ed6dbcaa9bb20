#pragma once

#include <vector>

namespace dfrc {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes from Newton iteration on
/// the Legendre recurrence, accurate to ~1e-15.
QuadratureRule gauss_legendre(int n);

/// Rule mapped to [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

}  // namespace dfrc
