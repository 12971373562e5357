#pragma once

#include <string>
#include <utility>

#include "fvsdg/models.hpp"

namespace fvsdg {

enum class FluxKind {
    StegerWarming,
    LaxFriedrichsLocal,
    LaxFriedrichsGlobal,
    VanLeer,
    AUSM,
    ScalarSW,
    ScalarLLF,
};

struct FluxScheme {
    FluxKind kind = FluxKind::StegerWarming;
    double delta = 0.0;     // Steger-Warming smoothing
    double global_M = 0.0;  // global LF bound, refreshed from the state of every residual evaluation
    double alpha = 0.0;     // ScalarLLF: > 0 selects a fixed global alpha

    bool needs_global_bound() const { return kind == FluxKind::LaxFriedrichsGlobal; }
};

FluxKind parse_flux(const std::string& s);
std::string flux_name(FluxKind k);
void check_compatible(const Model& model, const FluxScheme& scheme);

struct SplitFlux {
    Vec plus;
    Vec minus;
};

// lambda^+ and lambda^- of the Steger-Warming splitting.
std::pair<Vec, Vec> split_eigen_sw(const Vec& lambda, double delta);
// lambda^+ and lambda^- of the Lax-Friedrichs splitting with bound M.
std::pair<Vec, Vec> split_eigen_lf(const Vec& lambda, double M);

// van Leer / Liou-Steffen Mach split M^+ and M^-.
std::pair<double, double> split_mach(double mach);

// Split of the normal flux at one state. ScalarLLF has no per-state split.
SplitFlux split_flux(const Model& model, const FluxScheme& scheme, const Vec& U, Normal n, const Point& p, double t);

// Normal numerical flux from the interior (left) to the exterior (right) state.
Vec interface_flux(const Model& model, const FluxScheme& scheme, const Vec& UL, const Vec& UR, Normal n,
                   const Point& p, double t);

// Individual constructions, exposed for tests.
Vec jacobian_fvs_interface_flux(const Model& model, const FluxScheme& scheme, const Vec& UL, const Vec& UR,
                                Normal n);
Vec vanleer_flux(const Model& model, const Vec& UL, const Vec& UR, Normal n);
Vec ausm_flux(const Model& model, const Vec& UL, const Vec& UR, Normal n);
double scalar_sw_flux(const Model& model, double uL, double uR, Normal n, const Point& p, double t);
// alpha <= 0 selects the local bound max |F_n'| over [uL, uR]
double scalar_llf_flux(const Model& model, double uL, double uR, Normal n, const Point& p, double t,
                       double alpha = 0.0);

}  // namespace fvsdg
