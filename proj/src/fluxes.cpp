#include "fvsdg/fluxes.hpp"

#include <cmath>

#include <fmt/format.h>

#include "fvsdg/error.hpp"

namespace fvsdg {

FluxKind parse_flux(const std::string& s) {
    if (s == "sw" || s == "steger-warming") return FluxKind::StegerWarming;
    if (s == "lf" || s == "llf-split" || s == "lf-local") return FluxKind::LaxFriedrichsLocal;
    if (s == "lf-global") return FluxKind::LaxFriedrichsGlobal;
    if (s == "vanleer" || s == "van-leer") return FluxKind::VanLeer;
    if (s == "ausm") return FluxKind::AUSM;
    if (s == "scalar-sw") return FluxKind::ScalarSW;
    if (s == "llf" || s == "scalar-llf") return FluxKind::ScalarLLF;
    fail(ErrorKind::Config, fmt::format("unknown flux scheme '{}'", s));
}

std::string flux_name(FluxKind k) {
    switch (k) {
        case FluxKind::StegerWarming: return "sw";
        case FluxKind::LaxFriedrichsLocal: return "lf-local";
        case FluxKind::LaxFriedrichsGlobal: return "lf-global";
        case FluxKind::VanLeer: return "vanleer";
        case FluxKind::AUSM: return "ausm";
        case FluxKind::ScalarSW: return "scalar-sw";
        case FluxKind::ScalarLLF: return "llf";
    }
    return "?";
}

void check_compatible(const Model& model, const FluxScheme& scheme) {
    switch (scheme.kind) {
        case FluxKind::VanLeer:
        case FluxKind::AUSM:
            require(model.has_gas_form(), fmt::format("{} requires Euler or shallow water", flux_name(scheme.kind)));
            break;
        case FluxKind::ScalarSW:
        case FluxKind::ScalarLLF:
            require(model.scalar(), fmt::format("{} requires a scalar model", flux_name(scheme.kind)));
            break;
        case FluxKind::StegerWarming:
        case FluxKind::LaxFriedrichsLocal:
        case FluxKind::LaxFriedrichsGlobal:
            require(model.scalar() || model.has_eigen(),
                    fmt::format("{} requires an eigenstructure", flux_name(scheme.kind)));
            break;
    }
}

std::pair<Vec, Vec> split_eigen_sw(const Vec& lambda, double delta) {
    Vec p(lambda.size()), m(lambda.size());
    for (int k = 0; k < lambda.size(); ++k) {
        double l = lambda(k);
        double r = delta > 0.0 ? std::sqrt(l * l + delta * delta) : std::abs(l);
        p(k) = 0.5 * (l + r);
        m(k) = 0.5 * (l - r);
    }
    return {p, m};
}

std::pair<Vec, Vec> split_eigen_lf(const Vec& lambda, double M) {
    double mx = lambda.cwiseAbs().maxCoeff();
    if (M < mx * (1.0 - 1e-12))
        fail(ErrorKind::Numerical, fmt::format("Lax-Friedrichs bound M={} below max|lambda|={}", M, mx));
    Vec p(lambda.size()), m(lambda.size());
    for (int k = 0; k < lambda.size(); ++k) {
        p(k) = 0.5 * (lambda(k) + M);
        m(k) = 0.5 * (lambda(k) - M);
    }
    return {p, m};
}

std::pair<double, double> split_mach(double M) {
    if (M >= 1.0) return {M, 0.0};
    if (M <= -1.0) return {0.0, M};
    return {0.25 * (M + 1.0) * (M + 1.0), -0.25 * (M - 1.0) * (M - 1.0)};
}

namespace {

// Jacobian-based split A^{+-}(U) U at one state.
SplitFlux jacobian_split(const Model& model, const FluxScheme& scheme, const Vec& U, Normal n) {
    EigenStructure es = model.eigen(U, n);
    std::pair<Vec, Vec> lam;
    switch (scheme.kind) {
        case FluxKind::StegerWarming: lam = split_eigen_sw(es.lambda, scheme.delta); break;
        case FluxKind::LaxFriedrichsLocal: lam = split_eigen_lf(es.lambda, es.lambda.cwiseAbs().maxCoeff()); break;
        case FluxKind::LaxFriedrichsGlobal: lam = split_eigen_lf(es.lambda, scheme.global_M); break;
        default: fail(ErrorKind::Config, "jacobian_split: not an eigenvalue splitting");
    }
    Vec w = es.L * U;
    return {es.R * lam.first.cwiseProduct(w), es.R * lam.second.cwiseProduct(w)};
}

// Mach-number splittings in the face-normal frame.
SplitFlux mach_split(const Model& model, FluxKind kind, const Vec& U, Normal n) {
    const GasState s = model.gas(U);
    const int dim = model.dim();
    const bool euler = model.m() == dim + 2;
    const double g = model.gamma();
    const double nx = n.nx, ny = dim == 2 ? n.ny : 0.0;
    const double qn = s.u * nx + s.v * ny;
    const double M = qn / s.a;
    const auto [Mp, Mm] = split_mach(M);

    SplitFlux out{Vec::Zero(model.m()), Vec::Zero(model.m())};
    auto assemble = [&](Vec& F, double mass, double mom_n, double energy, double pres) {
        // momentum = mom_n along n plus mass * tangential velocity, plus pressure along n
        F(0) = mass;
        double qtx = s.u - qn * nx, qty = s.v - qn * ny;
        F(1) = mom_n * nx + mass * qtx + pres * nx;
        if (dim == 2) F(2) = mom_n * ny + mass * qty + pres * ny;
        if (euler) F(dim + 1) = energy;
    };

    if (kind == FluxKind::AUSM) {
        double Pp, Pm;
        if (M > 1.0) {
            Pp = s.P;
            Pm = 0.0;
        } else if (M < -1.0) {
            Pp = 0.0;
            Pm = s.P;
        } else {
            Pp = 0.5 * s.P * (1.0 + M);
            Pm = 0.5 * s.P * (1.0 - M);
        }
        double mp = s.rho * s.a * Mp, mm = s.rho * s.a * Mm;
        assemble(out.plus, mp, mp * qn, mp * s.H, Pp);
        assemble(out.minus, mm, mm * qn, mm * s.H, Pm);
        return out;
    }

    // van Leer
    const double qt2 = (s.u * s.u + s.v * s.v) - qn * qn;
    auto full = [&](Vec& F) {
        double mass = s.rho * qn;
        assemble(F, mass, mass * qn, (euler ? (s.rho * s.H) * qn : 0.0), s.P);
    };
    if (M >= 1.0) {
        full(out.plus);
        return out;
    }
    if (M <= -1.0) {
        full(out.minus);
        return out;
    }
    for (int sgn : {1, -1}) {
        double mass = s.rho * s.a * (sgn > 0 ? Mp : Mm);
        double w = (g - 1.0) * qn + sgn * 2.0 * s.a;
        double mom_n = mass * w / g;
        double energy = euler ? mass * (w * w / (2.0 * (g * g - 1.0)) + 0.5 * qt2) : 0.0;
        assemble(sgn > 0 ? out.plus : out.minus, mass, mom_n, energy, 0.0);
    }
    return out;
}

SplitFlux scalar_sw_split(const Model& model, const Vec& U, Normal n, const Point& p, double t) {
    double u = U(0);
    double a = model.sw_factor() * model.dflux(u, n, p, t);
    double f = model.normal_flux(U, n, p, t)(0);
    Vec fp(1), fm(1);
    fp(0) = 0.5 * (f + std::abs(a) * u);
    fm(0) = 0.5 * (f - std::abs(a) * u);
    return {fp, fm};
}

}  // namespace

SplitFlux split_flux(const Model& model, const FluxScheme& scheme, const Vec& U, Normal n, const Point& p,
                     double t) {
    switch (scheme.kind) {
        case FluxKind::VanLeer:
        case FluxKind::AUSM: return mach_split(model, scheme.kind, U, n);
        case FluxKind::ScalarSW: return scalar_sw_split(model, U, n, p, t);
        case FluxKind::StegerWarming:
            if (model.scalar()) return scalar_sw_split(model, U, n, p, t);
            return jacobian_split(model, scheme, U, n);
        case FluxKind::LaxFriedrichsLocal:
        case FluxKind::LaxFriedrichsGlobal:
            if (model.scalar()) {
                double u = U(0);
                double M = scheme.kind == FluxKind::LaxFriedrichsGlobal ? scheme.global_M
                                                                       : std::abs(model.dflux(u, n, p, t));
                double f = model.normal_flux(U, n, p, t)(0);
                Vec fp(1), fm(1);
                fp(0) = 0.5 * (f + M * u);
                fm(0) = 0.5 * (f - M * u);
                return {fp, fm};
            }
            return jacobian_split(model, scheme, U, n);
        case FluxKind::ScalarLLF: break;
    }
    fail(ErrorKind::Config, "split_flux: LLF flux has no single-state split");
}

Vec jacobian_fvs_interface_flux(const Model& model, const FluxScheme& scheme, const Vec& UL, const Vec& UR,
                                Normal n) {
    return jacobian_split(model, scheme, UL, n).plus + jacobian_split(model, scheme, UR, n).minus;
}

Vec vanleer_flux(const Model& model, const Vec& UL, const Vec& UR, Normal n) {
    return mach_split(model, FluxKind::VanLeer, UL, n).plus + mach_split(model, FluxKind::VanLeer, UR, n).minus;
}

Vec ausm_flux(const Model& model, const Vec& UL, const Vec& UR, Normal n) {
    return mach_split(model, FluxKind::AUSM, UL, n).plus + mach_split(model, FluxKind::AUSM, UR, n).minus;
}

double scalar_sw_flux(const Model& model, double uL, double uR, Normal n, const Point& p, double t) {
    Vec L(1), R(1);
    L(0) = uL;
    R(0) = uR;
    return scalar_sw_split(model, L, n, p, t).plus(0) + scalar_sw_split(model, R, n, p, t).minus(0);
}

double scalar_llf_flux(const Model& model, double uL, double uR, Normal n, const Point& p, double t,
                       double alpha) {
    Vec L(1), R(1);
    L(0) = uL;
    R(0) = uR;
    double a = alpha > 0.0 ? alpha : model.max_dflux(uL, uR, n, p, t);
    return 0.5 * (model.normal_flux(L, n, p, t)(0) + model.normal_flux(R, n, p, t)(0) - a * (uR - uL));
}

Vec interface_flux(const Model& model, const FluxScheme& scheme, const Vec& UL, const Vec& UR, Normal n,
                   const Point& p, double t) {
    if (scheme.kind == FluxKind::ScalarLLF) {
        Vec out(1);
        out(0) = scalar_llf_flux(model, UL(0), UR(0), n, p, t, scheme.alpha);
        return out;
    }
    return split_flux(model, scheme, UL, n, p, t).plus + split_flux(model, scheme, UR, n, p, t).minus;
}

}  // namespace fvsdg
