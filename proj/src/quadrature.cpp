#include "fvsdg/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "fvsdg/error.hpp"

namespace fvsdg {

QuadratureRule gauss_rule(int n) {
    require(n >= 1 && n <= 16, "gauss_rule: n must lie in [1, 16]");
    QuadratureRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);
    rule.exactness = 2 * n - 1;
    // Newton iteration on P_n from Chebyshev-like initial guesses, in long double.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = z;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0L);
            long double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-19L) break;
        }
        // refresh derivative at the converged root
        long double p0 = 1.0L, p1 = z;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0L);
        long double w = 2.0L / ((1.0L - z * z) * dp * dp);
        rule.points[i] = static_cast<double>(-z / 2);
        rule.points[n - 1 - i] = static_cast<double>(z / 2);
        rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w / 2);
    }
    if (n % 2 == 1) rule.points[n / 2] = 0.0;
    return rule;
}

}  // namespace fvsdg
