#include "fvsdg/models.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fvsdg/error.hpp"

namespace fvsdg {

namespace {

Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

Vec scalar_vec(double u) {
    Vec out(1);
    out(0) = u;
    return out;
}

}  // namespace

// ---------------------------------------------------------------- Model

Vec Model::normal_flux(const Vec& U, Normal n, const Point& p, double t) const {
    if (dim() == 1) return n.nx * flux(U, 0, p, t);
    return n.nx * flux(U, 0, p, t) + n.ny * flux(U, 1, p, t);
}

Vec Model::reflect(const Vec&, Normal) const {
    fail(ErrorKind::Config, fmt::format("{}: reflective boundaries are not supported", name()));
}

Vec Model::source(const Vec& U, const Point&, double) const { return Vec::Zero(U.size()); }

EigenStructure Model::eigen(const Vec&, Normal) const {
    fail(ErrorKind::Config, fmt::format("{}: no eigenstructure", name()));
}

RoeState Model::roe_average(const Vec&, const Vec&, Normal) const {
    fail(ErrorKind::Config, fmt::format("{}: no Roe average", name()));
}

GasState Model::gas(const Vec&) const {
    fail(ErrorKind::Config, fmt::format("{}: Mach-number splitting needs Euler or shallow water", name()));
}

double Model::dflux(double, Normal, const Point&, double) const {
    fail(ErrorKind::Config, fmt::format("{}: scalar flux derivative requested for a system", name()));
}

double Model::max_dflux(double uL, double uR, Normal n, const Point& p, double t) const {
    return std::max(std::abs(dflux(uL, n, p, t)), std::abs(dflux(uR, n, p, t)));
}

// ---------------------------------------------------------------- Euler

double Euler::pressure(const Vec& U) const {
    double rho = U(0), ke = 0.0;
    for (int d = 0; d < dim_; ++d) ke += U(1 + d) * U(1 + d);
    return (gamma_ - 1.0) * (U(dim_ + 1) - 0.5 * ke / rho);
}

Vec Euler::conservative(double rho, double u, double v, double P) const {
    double E = P / (gamma_ - 1.0) + 0.5 * rho * (u * u + (dim_ == 2 ? v * v : 0.0));
    if (dim_ == 1) return vec({rho, rho * u, E});
    return vec({rho, rho * u, rho * v, E});
}

Vec Euler::primitive(const Vec& U) const {
    double rho = U(0);
    if (dim_ == 1) return vec({rho, U(1) / rho, pressure(U)});
    return vec({rho, U(1) / rho, U(2) / rho, pressure(U)});
}

bool Euler::admissible(const Vec& U) const {
    return std::isfinite(U(0)) && U(0) > 0.0 && std::isfinite(U(dim_ + 1)) && pressure(U) > 0.0;
}

GasState Euler::gas(const Vec& U) const {
    if (!admissible(U))
        fail(ErrorKind::Inadmissible, fmt::format("euler: inadmissible state rho={} P={}", U(0), pressure(U)));
    GasState s{};
    s.rho = U(0);
    s.u = U(1) / s.rho;
    s.v = dim_ == 2 ? U(2) / s.rho : 0.0;
    s.P = pressure(U);
    s.a = std::sqrt(gamma_ * s.P / s.rho);
    s.H = (U(dim_ + 1) + s.P) / s.rho;
    return s;
}

Vec Euler::flux(const Vec& U, int dir, const Point&, double) const {
    double rho = U(0), P = pressure(U), E = U(dim_ + 1);
    double un = U(1 + dir) / rho;
    Vec F(m());
    F(0) = U(1 + dir);
    for (int d = 0; d < dim_; ++d) F(1 + d) = U(1 + d) * un;
    F(1 + dir) += P;
    F(dim_ + 1) = (E + P) * un;
    return F;
}

double Euler::max_speed(const Vec& U, int dir, const Point&, double) const {
    GasState s = gas(U);
    return std::abs(dir == 0 ? s.u : s.v) + s.a;
}

Vec Euler::reflect(const Vec& U, Normal n) const {
    Vec out = U;
    if (dim_ == 1) {
        out(1) = -U(1);
        return out;
    }
    double mn = U(1) * n.nx + U(2) * n.ny;
    out(1) -= 2.0 * mn * n.nx;
    out(2) -= 2.0 * mn * n.ny;
    return out;
}

double Euler::normal_velocity(const Vec& U, Normal n, const Point&, double) const {
    double qn = U(1) * n.nx / U(0);
    if (dim_ == 2) qn += U(2) * n.ny / U(0);
    return qn;
}

EigenStructure Euler::eigen_from(double rho, double u, double v, double H, double a, Normal n) const {
    (void)rho;
    EigenStructure es;
    const int M = m();
    es.lambda.resize(M);
    es.R.resize(M, M);
    if (dim_ == 1) {
        double qn = u * n.nx;
        es.lambda << qn, qn - a, qn + a;
        es.R << 1.0, 1.0, 1.0,
                u, u - a * n.nx, u + a * n.nx,
                0.5 * u * u, H - a * qn, H + a * qn;
    } else {
        double qn = u * n.nx + v * n.ny;
        double lx = -n.ny, ly = n.nx;
        double ql = u * lx + v * ly;
        es.lambda << qn, qn, qn - a, qn + a;
        es.R << 1.0, 0.0, 1.0, 1.0,
                u, lx, u - a * n.nx, u + a * n.nx,
                v, ly, v - a * n.ny, v + a * n.ny,
                0.5 * (u * u + v * v), ql, H - a * qn, H + a * qn;
    }
    es.L = es.R.inverse();
    return es;
}

EigenStructure Euler::eigen(const Vec& U, Normal n) const {
    GasState s = gas(U);
    return eigen_from(s.rho, s.u, s.v, s.H, s.a, n);
}

RoeState Euler::roe_average(const Vec& UL, const Vec& UR, Normal) const {
    GasState l = gas(UL), r = gas(UR);
    double sl = std::sqrt(l.rho), sr = std::sqrt(r.rho);
    RoeState s;
    double srho = 0.5 * (sl + sr);
    s.rho = srho * srho;
    s.u = (sl * l.u + sr * r.u) / (sl + sr);
    s.v = (sl * l.v + sr * r.v) / (sl + sr);
    s.H = (sl * l.H + sr * r.H) / (sl + sr);
    double q2 = s.u * s.u + (dim_ == 2 ? s.v * s.v : 0.0);
    s.P = (gamma_ - 1.0) / gamma_ * (s.rho * s.H - 0.5 * s.rho * q2);
    double a2 = (gamma_ - 1.0) * (s.H - 0.5 * q2);
    if (!(a2 > 0.0)) fail(ErrorKind::Inadmissible, fmt::format("euler: Roe average has a^2 = {}", a2));
    s.a = std::sqrt(a2);
    s.E = s.rho * s.H - s.P;
    if (dim_ == 1)
        s.conservative = vec({s.rho, s.rho * s.u, s.E});
    else
        s.conservative = vec({s.rho, s.rho * s.u, s.rho * s.v, s.E});
    return s;
}

// ---------------------------------------------------------------- ShallowWater

bool ShallowWater::admissible(const Vec& U) const { return std::isfinite(U(0)) && U(0) > 0.0; }

GasState ShallowWater::gas(const Vec& U) const {
    if (!admissible(U)) fail(ErrorKind::Inadmissible, fmt::format("swe: inadmissible depth h={}", U(0)));
    GasState s{};
    s.rho = U(0);
    s.u = U(1) / s.rho;
    s.v = dim_ == 2 ? U(2) / s.rho : 0.0;
    s.P = 0.5 * g_ * s.rho * s.rho;
    s.a = std::sqrt(g_ * s.rho);
    s.H = 0.0;
    return s;
}

Vec ShallowWater::flux(const Vec& U, int dir, const Point&, double) const {
    double h = U(0), un = U(1 + dir) / h;
    Vec F(m());
    F(0) = U(1 + dir);
    for (int d = 0; d < dim_; ++d) F(1 + d) = U(1 + d) * un;
    F(1 + dir) += 0.5 * g_ * h * h;
    return F;
}

double ShallowWater::max_speed(const Vec& U, int dir, const Point&, double) const {
    GasState s = gas(U);
    return std::abs(dir == 0 ? s.u : s.v) + s.a;
}

Vec ShallowWater::reflect(const Vec& U, Normal n) const {
    Vec out = U;
    if (dim_ == 1) {
        out(1) = -U(1);
        return out;
    }
    double mn = U(1) * n.nx + U(2) * n.ny;
    out(1) -= 2.0 * mn * n.nx;
    out(2) -= 2.0 * mn * n.ny;
    return out;
}

Vec ShallowWater::source(const Vec& U, const Point& p, double) const {
    Vec S = Vec::Zero(m());
    if (slope_) S(1) = -g_ * U(0) * slope_(p.x);
    return S;
}

double ShallowWater::normal_velocity(const Vec& U, Normal n, const Point&, double) const {
    double qn = U(1) * n.nx / U(0);
    if (dim_ == 2) qn += U(2) * n.ny / U(0);
    return qn;
}

EigenStructure ShallowWater::eigen_from(double u, double v, Normal n, double as) const {
    EigenStructure es;
    if (dim_ == 1) {
        double qn = u * n.nx;
        es.lambda = vec({qn - as, qn + as});
        es.R.resize(2, 2);
        es.R << 1.0, 1.0, u - as * n.nx, u + as * n.nx;
        es.L.resize(2, 2);
        // n.nx = +-1: rows are the analytic left eigenvectors
        es.L << (as + qn) / (2 * as), -n.nx / (2 * as),
                (as - qn) / (2 * as), n.nx / (2 * as);
        return es;
    }
    double qn = u * n.nx + v * n.ny;
    double lx = -n.ny, ly = n.nx;
    double ql = u * lx + v * ly;
    es.lambda = vec({qn - as, qn, qn + as});
    es.R.resize(3, 3);
    es.R << 1.0, 0.0, 1.0,
            u - as * n.nx, lx, u + as * n.nx,
            v - as * n.ny, ly, v + as * n.ny;
    es.L.resize(3, 3);
    es.L << (as + qn) / (2 * as), -n.nx / (2 * as), -n.ny / (2 * as),
            -ql, lx, ly,
            (as - qn) / (2 * as), n.nx / (2 * as), n.ny / (2 * as);
    return es;
}

EigenStructure ShallowWater::eigen(const Vec& U, Normal n) const {
    GasState s = gas(U);
    return eigen_from(s.u, s.v, n, std::sqrt(g_ * s.rho / 2.0));
}

EigenStructure ShallowWater::char_eigen(const Vec& U, Normal n) const {
    GasState s = gas(U);
    return eigen_from(s.u, s.v, n, std::sqrt(g_ * s.rho));
}

RoeState ShallowWater::roe_average(const Vec& UL, const Vec& UR, Normal) const {
    GasState l = gas(UL), r = gas(UR);
    double sl = std::sqrt(l.rho), sr = std::sqrt(r.rho);
    RoeState s;
    s.rho = 0.5 * (l.rho + r.rho);
    s.u = (sl * l.u + sr * r.u) / (sl + sr);
    s.v = (sl * l.v + sr * r.v) / (sl + sr);
    s.a = std::sqrt(g_ * s.rho);
    s.P = 0.5 * g_ * s.rho * s.rho;
    if (dim_ == 1)
        s.conservative = vec({s.rho, s.rho * s.u});
    else
        s.conservative = vec({s.rho, s.rho * s.u, s.rho * s.v});
    return s;
}

// ---------------------------------------------------------------- scalar models

Vec LinearAdvection::flux(const Vec& U, int dir, const Point& p, double t) const {
    return scalar_vec(vel_(p, t)[dir] * U(0));
}

double LinearAdvection::max_speed(const Vec&, int dir, const Point& p, double t) const {
    return std::abs(vel_(p, t)[dir]);
}

double LinearAdvection::normal_velocity(const Vec&, Normal n, const Point& p, double t) const {
    auto c = vel_(p, t);
    return c[0] * n.nx + (dim_ == 2 ? c[1] * n.ny : 0.0);
}

double LinearAdvection::dflux(double, Normal n, const Point& p, double t) const {
    return normal_velocity(Vec(), n, p, t);
}

double LinearAdvection::max_dflux(double, double, Normal n, const Point& p, double t) const {
    return std::abs(normal_velocity(Vec(), n, p, t));
}

Vec Burgers::flux(const Vec& U, int, const Point&, double) const { return scalar_vec(0.5 * U(0) * U(0)); }

double Burgers::max_speed(const Vec& U, int, const Point&, double) const { return std::abs(U(0)); }

double Burgers::normal_velocity(const Vec& U, Normal n, const Point&, double) const {
    return U(0) * (n.nx + (dim_ == 2 ? n.ny : 0.0));
}

double Burgers::dflux(double u, Normal n, const Point&, double) const {
    return u * (n.nx + (dim_ == 2 ? n.ny : 0.0));
}

double Burgers::max_dflux(double uL, double uR, Normal n, const Point&, double) const {
    // F_n' is linear in u, so the extremum sits at an endpoint
    return std::max(std::abs(uL), std::abs(uR)) * std::abs(n.nx + (dim_ == 2 ? n.ny : 0.0));
}

double BuckleyLeverett::f(double u) { return 4.0 * u * u / (4.0 * u * u + (1.0 - u) * (1.0 - u)); }

double BuckleyLeverett::df(double u) {
    double d = 4.0 * u * u + (1.0 - u) * (1.0 - u);
    return 8.0 * u * (1.0 - u) / (d * d);
}

Vec BuckleyLeverett::flux(const Vec& U, int, const Point&, double) const { return scalar_vec(f(U(0))); }

double BuckleyLeverett::max_speed(const Vec& U, int, const Point&, double) const { return std::abs(df(U(0))); }

double BuckleyLeverett::normal_velocity(const Vec& U, Normal n, const Point&, double) const {
    return df(U(0)) * n.nx;
}

double BuckleyLeverett::dflux(double u, Normal n, const Point&, double) const { return df(u) * n.nx; }

double BuckleyLeverett::max_dflux(double uL, double uR, Normal n, const Point&, double) const {
    // f' is not monotone; sample the interval densely
    double lo = std::min(uL, uR), hi = std::max(uL, uR), best = 0.0;
    constexpr int kSamples = 64;
    for (int k = 0; k <= kSamples; ++k) best = std::max(best, std::abs(df(lo + (hi - lo) * k / kSamples)));
    return best * std::abs(n.nx);
}

}  // namespace fvsdg
