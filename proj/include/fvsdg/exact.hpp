#pragma once

namespace fvsdg::exact {

// Entropy solution of u_t + (u^2/2)_x = 0, u(x,0) = sin x, 2pi-periodic.
// Characteristic foot found by safeguarded Newton; the shock sits at x = pi.
double burgers_sin(double x, double t);

// u_t + (sin(w t) u)_x = 0, u(x,0) = sin x
double advection_sin_t(double x, double t, double w);

// u_t + (sin(x) u)_x = 0, u(x,0) = 1
double advection_sin_x(double x, double t);

}  // namespace fvsdg::exact
