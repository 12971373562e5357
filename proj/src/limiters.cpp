#include "fvsdg/limiters.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fvsdg/characteristic.hpp"
#include "fvsdg/error.hpp"
#include "fvsdg/parallel.hpp"
#include "fvsdg/quadrature.hpp"

namespace fvsdg {

namespace {

constexpr double kChangeTol = 1e-13;
constexpr double kZeroNorm = 1e-13;

bool changed(double mod, double orig) { return std::abs(mod - orig) > kChangeTol * (1.0 + std::abs(orig)); }

}  // namespace

// ---------------------------------------------------------------- config

void LimiterConfig::validate() const {
    require(w_is >= 0.0 && w_is <= 1.0 && w_l2 >= 0.0 && w_l2 <= 1.0, "limiter weights must lie in [0, 1]");
    require(std::abs(w_is + w_l2 - 1.0) < 1e-12, "limiter weights must sum to 1");
    require(tvb_M >= 0.0, "TVB parameter must be nonnegative");
    if (kind == LimiterKind::ISTVB)
        require(w_is == 1.0 && w_l2 == 0.0, "istvb needs weights (1, 0); use isl2 for other weights");
}

LimiterKind parse_limiter(const std::string& s) {
    if (s == "none") return LimiterKind::None;
    if (s == "tvb" || s == "classical") return LimiterKind::ClassicalTVB;
    if (s == "istvb" || s == "is") return LimiterKind::ISTVB;
    if (s == "isl2" || s == "isl2tvb") return LimiterKind::ISL2TVB;
    fail(ErrorKind::Config, fmt::format("unknown limiter '{}' (none, tvb, istvb, isl2)", s));
}

IndicatorKind parse_indicator(const std::string& s) {
    if (s == "tvb" || s == "builtin") return IndicatorKind::BuiltInTVB;
    if (s == "kxrcf") return IndicatorKind::KXRCF;
    if (s == "always" || s == "all") return IndicatorKind::AlwaysOn;
    fail(ErrorKind::Config, fmt::format("unknown indicator '{}' (tvb, kxrcf, always)", s));
}

FreezeAverage parse_freeze(const std::string& s) {
    if (s == "arithmetic" || s == "mean") return FreezeAverage::Arithmetic;
    if (s == "roe") return FreezeAverage::Roe;
    fail(ErrorKind::Config, fmt::format("unknown freeze average '{}' (arithmetic, roe)", s));
}

std::string limiter_name(LimiterKind k) {
    switch (k) {
        case LimiterKind::None: return "none";
        case LimiterKind::ClassicalTVB: return "tvb";
        case LimiterKind::ISTVB: return "istvb";
        case LimiterKind::ISL2TVB: return "isl2";
    }
    return "?";
}

std::string indicator_name(IndicatorKind k) {
    switch (k) {
        case IndicatorKind::BuiltInTVB: return "tvb";
        case IndicatorKind::KXRCF: return "kxrcf";
        case IndicatorKind::AlwaysOn: return "always";
    }
    return "?";
}

// ---------------------------------------------------------------- minmod

double minmod3(double a, double b, double c, double Mh2) {
    if (std::abs(a) <= Mh2) return a;
    if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
    if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
    return 0.0;
}

double minmod(const std::vector<double>& v, double tvb_M, double h) {
    if (v.empty()) return 0.0;
    if (std::abs(v[0]) <= tvb_M * h * h) return v[0];
    double s = v[0] > 0.0 ? 1.0 : (v[0] < 0.0 ? -1.0 : 0.0);
    if (s == 0.0) return 0.0;
    double mag = std::abs(v[0]);
    for (double x : v) {
        if (x * s <= 0.0) return 0.0;
        mag = std::min(mag, std::abs(x));
    }
    return s * mag;
}

// ---------------------------------------------------------------- smoothness matrices

Eigen::MatrixXd assemble_M_IS(const Basis1D& basis, double dx) {
    const int K = basis.degree();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(K, K);
    if (K == 0) return M;
    QuadratureRule q = gauss_rule(K + 1);
    for (int d = 1; d <= K; ++d) {
        double scale = std::pow(dx, 2 * d - 1);
        for (int j = 1; j <= K; ++j)
            for (int k = j; k <= K; ++k) {
                if (d > j) continue;
                double s = 0.0;
                for (int g = 0; g < q.size(); ++g)
                    s += q.weights[g] * dx * basis.eval(j, q.points[g], dx, d) * basis.eval(k, q.points[g], dx, d);
                M(j - 1, k - 1) += scale * s;
            }
    }
    Eigen::MatrixXd full = M + M.transpose();
    full.diagonal() = M.diagonal();
    return 2.0 * full;
}

Eigen::MatrixXd assemble_M_IS(const Basis2D& basis, double dx, double dy) {
    const int K = basis.degree(), n = basis.size() - 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    if (K == 0) return M;
    QuadratureRule q = gauss_rule(K + 1);
    const int nq = q.size();
    const double area = dx * dy;
    for (int ord = 1; ord <= K; ++ord) {
        double scale = std::pow(area, 2 * ord - 1);
        for (int ox = ord; ox >= 0; --ox) {
            int oy = ord - ox;
            // derivative tables at the tensor points
            Eigen::MatrixXd D(nq * nq, n);
            for (int gy = 0; gy < nq; ++gy)
                for (int gx = 0; gx < nq; ++gx)
                    for (int k = 1; k <= n; ++k)
                        D(gx + nq * gy, k - 1) = basis.eval(k, q.points[gx], q.points[gy], dx, dy, ox, oy);
            Eigen::VectorXd w(nq * nq);
            for (int gy = 0; gy < nq; ++gy)
                for (int gx = 0; gx < nq; ++gx) w(gx + nq * gy) = q.weights[gx] * q.weights[gy] * area;
            M += scale * D.transpose() * w.asDiagonal() * D;
        }
    }
    return 2.0 * M;
}

// ---------------------------------------------------------------- constraints and indicators

CellConstraints make_constraints(const Discretization& disc, double tvb_M) {
    CellConstraints cc;
    cc.nsides = disc.sides();
    cc.nmodes = disc.make_field().nmodes;
    cc.phi0 = 1.0 / std::sqrt(disc.measure());
    double h = disc.dim() == 1 ? disc.width(0) : std::max(disc.width(0), disc.width(1));
    cc.Mh2 = tvb_M * h * h;
    cc.G.resize(cc.nsides, cc.nmodes);
    for (int s = 0; s < cc.nsides; ++s) {
        const std::vector<double>& f = disc.face_functional(static_cast<Side>(s));
        for (int k = 0; k < cc.nmodes; ++k) cc.G(s, k) = f[k];
    }
    return cc;
}

bool tvb_targets(const CellConstraints& cc, const double* a, const double* nb, double* target) {
    const double m0 = a[0] * cc.phi0;
    bool any = false;
    for (int s = 0; s < cc.nsides; ++s) {
        double g = 0.0;
        for (int k = 0; k < cc.nmodes; ++k) g += cc.G(s, k) * a[k];
        const bool lower = (s % 2) == 0;
        const int axis = s / 2;
        double dev = lower ? m0 - g : g - m0;
        double dm = m0 - nb[2 * axis], dp = nb[2 * axis + 1] - m0;
        double mod = minmod3(dev, dm, dp, cc.Mh2);
        if (changed(mod, dev)) {
            any = true;
            target[s] = lower ? m0 - mod : m0 + mod;
        } else {
            target[s] = g;
        }
    }
    return any;
}

void gather_neighbor_means(const Discretization& disc, const ModalField& u, int cell, double* out) {
    const int ns = disc.sides();
    for (int s = 0; s < ns; ++s) {
        Vec nb = disc.neighbor_mean(u, cell, static_cast<Side>(s));
        for (int c = 0; c < u.m; ++c) out[c * ns + s] = nb(c);
    }
}

namespace {

TvbResult indicate_tvb(const Discretization& disc, const ModalField& u, double tvb_M) {
    CellConstraints cc = make_constraints(disc, tvb_M);
    const int m = u.m, ns = cc.nsides, nm = u.nmodes;
    TvbResult r;
    r.nsides = ns;
    r.troubled.assign(static_cast<std::size_t>(u.ncells) * m, 0);
    r.target.assign(static_cast<std::size_t>(u.ncells) * m * ns, 0.0);
    parallel_for(u.ncells, [&](int cell) {
        double nb[4 * kMaxComp];
        gather_neighbor_means(disc, u, cell, nb);
        for (int c = 0; c < m; ++c) {
            std::size_t idx = static_cast<std::size_t>(cell) * m + c;
            r.troubled[idx] = tvb_targets(cc, u.cell(cell) + c * nm, nb + c * ns, &r.target[idx * ns]) ? 1 : 0;
        }
    });
    return r;
}

}  // namespace

TvbResult indicate_tvb_1d(const DG1D& disc, const ModalField& u, double tvb_M) { return indicate_tvb(disc, u, tvb_M); }

TvbResult indicate_tvb_2d(const DG2D& disc, const ModalField& u, double tvb_M) { return indicate_tvb(disc, u, tvb_M); }

std::vector<std::uint8_t> indicate_kxrcf(const Discretization& disc, const ModalField& u, double t) {
    const Model& model = disc.model();
    const int m = u.m, nm = u.nmodes, ns = disc.sides(), K = u.K;
    const Table& V = disc.volume_values();
    const double h = disc.dim() == 1 ? 0.5 * disc.width(0) : 0.5 * std::hypot(disc.width(0), disc.width(1));
    const double hpow = std::pow(h, 0.5 * (K + 1));
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(u.ncells) * m, 0);
    parallel_for(u.ncells, [&](int cell) {
        double jump[kMaxComp] = {0.0, 0.0, 0.0, 0.0};
        double inflow = 0.0;
        for (int s = 0; s < ns; ++s) {
            Side side = static_cast<Side>(s);
            Normal n = side_normal(side);
            Vec in = disc.face_value(u, cell, side);
            if (model.normal_velocity(in, n, disc.face_center(cell, side), t) >= 0.0) continue;
            Vec out = disc.exterior_face_value(u, cell, side);
            double len = disc.dim() == 1 ? 1.0 : disc.width(s < 2 ? 1 : 0);
            for (int c = 0; c < m; ++c) jump[c] += (in(c) - out(c)) * len;
            inflow += len;
        }
        if (inflow == 0.0) return;
        const double* a = u.cell(cell);
        for (int c = 0; c < m; ++c) {
            double norm = 0.0;
            for (int q = 0; q < V.rows; ++q) {
                double v = 0.0;
                for (int k = 0; k < nm; ++k) v += V(q, k) * a[c * nm + k];
                norm = std::max(norm, std::abs(v));
            }
            double num = std::abs(jump[c]);
            bool flag = norm < kZeroNorm ? num > kZeroNorm : num / (hpow * inflow * norm) > 1.0;
            flags[static_cast<std::size_t>(cell) * m + c] = flag ? 1 : 0;
        }
    });
    return flags;
}

// ---------------------------------------------------------------- cell limiter

CellLimiter::CellLimiter(const Discretization& disc, const LimiterConfig& cfg)
    : cfg_(cfg), cc_(make_constraints(disc, cfg.tvb_M)) {
    const int n = cc_.nmodes - 1, nc = cc_.nsides;
    if (disc.dim() == 1)
        mis_ = assemble_M_IS(Basis1D(disc.K()), disc.width(0));
    else
        mis_ = assemble_M_IS(Basis2D(disc.K()), disc.width(0), disc.width(1));
    if (n == 0) return;
    fallback_ = cfg_.kind == LimiterKind::ClassicalTVB || n < nc;
    if (fallback_)
        cod_.compute(cc_.G.rightCols(n));
    else
        lu_.compute(saddle_matrix());
}

Eigen::MatrixXd CellLimiter::saddle_matrix() const {
    const int n = cc_.nmodes - 1, nc = cc_.nsides;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + nc, n + nc);
    A.topLeftCorner(n, n) = cfg_.w_is * mis_ + cfg_.w_l2 * 2.0 * Eigen::MatrixXd::Identity(n, n);
    A.topRightCorner(n, nc) = cc_.G.rightCols(n).transpose();
    A.bottomLeftCorner(nc, n) = cc_.G.rightCols(n);
    return A;
}

Eigen::VectorXd CellLimiter::saddle_rhs(const double* a_old, const double* target) const {
    const int n = cc_.nmodes - 1, nc = cc_.nsides;
    Eigen::VectorXd b(n + nc);
    for (int k = 0; k < n; ++k) b(k) = cfg_.w_l2 * 2.0 * a_old[k + 1];
    for (int s = 0; s < nc; ++s) b(n + s) = target[s] - a_old[0] * cc_.G(s, 0);
    return b;
}

void CellLimiter::limit(const double* a_old, const double* target, double* a_new) const {
    const int n = cc_.nmodes - 1, nc = cc_.nsides;
    a_new[0] = a_old[0];
    if (n == 0) return;
    if (fallback_) {
        Eigen::VectorXd rhs(nc);
        for (int s = 0; s < nc; ++s) rhs(s) = target[s] - a_old[0] * cc_.G(s, 0);
        Eigen::VectorXd x = cod_.solve(rhs);
        for (int k = 0; k < n; ++k) a_new[k + 1] = x(k);
        return;
    }
    Eigen::VectorXd x = lu_.solve(saddle_rhs(a_old, target));
    for (int k = 0; k < n; ++k) a_new[k + 1] = x(k);
}

void limit_cell_opt(const Discretization& disc, const LimiterConfig& cfg, const double* a_old, const double* target,
                    double* a_new) {
    CellLimiter(disc, cfg).limit(a_old, target, a_new);
}

// ---------------------------------------------------------------- driver

Limiter::Limiter(const Discretization& disc, LimiterConfig cfg) : disc_(disc), cfg_(cfg), cell_(disc, cfg) {
    cfg_.validate();
    if (cfg_.characteristic && !disc.model().scalar())
        require(disc.model().has_eigen(), "characteristic limiting needs a model with an eigenstructure");
}

LimitReport Limiter::apply(ModalField& u, double t) const {
    const int N = u.ncells, m = u.m, nm = u.nmodes, ns = disc_.sides();
    LimitReport rep;
    rep.troubled.assign(N, 0);
    rep.troubled_comp.assign(static_cast<std::size_t>(N) * m, 0);
    if (cfg_.kind == LimiterKind::None) return rep;

    const ModalField src = u;
    const bool characteristic = cfg_.characteristic && m > 1;
    const CellConstraints& cc = cell_.constraints();

    std::vector<std::uint8_t> flags;
    if (cfg_.indicator == IndicatorKind::KXRCF)
        flags = indicate_kxrcf(disc_, src, t);
    else if (cfg_.indicator == IndicatorKind::AlwaysOn)
        flags.assign(static_cast<std::size_t>(N) * m, 1);

    std::vector<int> fallbacks(N, 0);
    parallel_for(N, [&](int cell) {
        std::uint8_t* tc = &rep.troubled_comp[static_cast<std::size_t>(cell) * m];
        if (characteristic) {
            bool limit_all = cfg_.indicator != IndicatorKind::BuiltInTVB;
            if (limit_all) {
                bool any = false;
                for (int c = 0; c < m; ++c) any = any || flags[static_cast<std::size_t>(cell) * m + c];
                if (!any) return;
                for (int c = 0; c < m; ++c) tc[c] = flags[static_cast<std::size_t>(cell) * m + c];
            }
            if (limit_in_characteristic(disc_, src, cell, cell_, cfg_, limit_all, u.cell(cell), &fallbacks[cell])) {
                rep.troubled[cell] = 1;
                if (!limit_all)
                    for (int c = 0; c < m; ++c) tc[c] = 1;
            } else if (limit_all) {
                rep.troubled[cell] = 1;
            }
            return;
        }
        double nb[4 * kMaxComp], target[4];
        gather_neighbor_means(disc_, src, cell, nb);
        for (int c = 0; c < m; ++c) {
            const double* a = src.cell(cell) + c * nm;
            bool mod = tvb_targets(cc, a, nb + c * ns, target);
            bool flag = cfg_.indicator == IndicatorKind::BuiltInTVB ? mod : flags[static_cast<std::size_t>(cell) * m + c] != 0;
            if (!flag) continue;
            tc[c] = 1;
            rep.troubled[cell] = 1;
            cell_.limit(a, target, u.cell(cell) + c * nm);
        }
    });
    for (int cell = 0; cell < N; ++cell) {
        rep.count += rep.troubled[cell];
        rep.freeze_fallbacks += fallbacks[cell];
    }
    return rep;
}

LimitReport apply_limiter(const Discretization& disc, ModalField& u, const LimiterConfig& cfg, double t) {
    return Limiter(disc, cfg).apply(u, t);
}

}  // namespace fvsdg
