#include "fvsdg/exact.hpp"

#include <cmath>
#include <numbers>

namespace fvsdg::exact {

namespace {

// root of xi + t sin(xi) = x on [lo, hi] where the map is increasing
double foot(double x, double t, double lo, double hi) {
    double xi = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double g = xi + t * std::sin(xi) - x;
        if (g > 0.0)
            hi = xi;
        else
            lo = xi;
        double dg = 1.0 + t * std::cos(xi);
        double next = dg > 0.0 ? xi - g / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - xi) <= 1e-16 * (1.0 + std::abs(xi))) return next;
        xi = next;
    }
    return xi;
}

}  // namespace

double burgers_sin(double x, double t) {
    constexpr double pi = std::numbers::pi;
    double s = std::fmod(x, 2.0 * pi);
    if (s < 0.0) s += 2.0 * pi;
    if (t == 0.0) return std::sin(s);
    // odd symmetry about pi
    double sign = 1.0;
    if (s > pi) {
        s = 2.0 * pi - s;
        sign = -1.0;
    }
    if (s == 0.0 || s == pi) return 0.0;
    double hi = t <= 1.0 ? pi : std::acos(-1.0 / t);
    return sign * std::sin(foot(s, t, 0.0, hi));
}

double advection_sin_t(double x, double t, double w) { return std::sin(x + (std::cos(w * t) - 1.0) / w); }

double advection_sin_x(double x, double t) {
    // sin(2 atan(e^-t tan(x/2))) / sin x in a form without cancellation
    double c = std::cos(0.5 * x), s = std::sin(0.5 * x), e = std::exp(-t);
    return e / (c * c + e * e * s * s);
}

}  // namespace fvsdg::exact
