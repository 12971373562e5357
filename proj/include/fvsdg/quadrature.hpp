#pragma once

#include <vector>

namespace fvsdg {

// Gauss-Legendre rule on the reference interval [-1/2, 1/2]; weights sum to 1.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    int exactness = 0;

    int size() const { return static_cast<int>(points.size()); }
};

// n-point rule, 1 <= n <= 16, exact for polynomials of degree 2n-1.
QuadratureRule gauss_rule(int n);

}  // namespace fvsdg
