#include <cmath>
#include <random>

#include <doctest.h>

#include "fvsdg/cases.hpp"
#include "fvsdg/error.hpp"
#include "fvsdg/harness.hpp"
#include "fvsdg/limiters.hpp"
#include "fvsdg/quadrature.hpp"

using namespace fvsdg;

namespace {

std::shared_ptr<Model> burgers(int dim) { return std::make_shared<Burgers>(dim); }

LimiterConfig config(LimiterKind k, double w_is = 1.0, double M = 0.0) {
    LimiterConfig c;
    c.kind = k;
    c.w_is = w_is;
    c.w_l2 = 1.0 - w_is;
    c.tvb_M = M;
    return c;
}

// IS by direct quadrature of the derivatives of a 1D cell polynomial.
double is_direct_1d(const Basis1D& b, double dx, const Eigen::VectorXd& a) {
    QuadratureRule q = gauss_rule(b.degree() + 1);
    double s = 0.0;
    for (int d = 1; d <= b.degree(); ++d)
        for (int g = 0; g < q.size(); ++g) {
            double v = 0.0;
            for (int k = 0; k < b.size(); ++k) v += a(k) * b.eval(k, q.points[g], dx, d);
            s += std::pow(dx, 2 * d - 1) * q.weights[g] * dx * v * v;
        }
    return s;
}

double is_direct_2d(const Basis2D& b, double dx, double dy, const Eigen::VectorXd& a) {
    QuadratureRule q = gauss_rule(b.degree() + 1);
    const double area = dx * dy;
    double s = 0.0;
    for (int ord = 1; ord <= b.degree(); ++ord)
        for (int ox = ord; ox >= 0; --ox)
            for (int gx = 0; gx < q.size(); ++gx)
                for (int gy = 0; gy < q.size(); ++gy) {
                    double v = 0.0;
                    for (int k = 0; k < b.size(); ++k)
                        v += a(k) * b.eval(k, q.points[gx], q.points[gy], dx, dy, ox, ord - ox);
                    s += std::pow(area, 2 * ord - 1) * q.weights[gx] * q.weights[gy] * area * v * v;
                }
    return s;
}

double IS(const Eigen::MatrixXd& M, const double* a, int n) {
    Eigen::Map<const Eigen::VectorXd> t(a + 1, n);
    return 0.5 * t.dot(M * t);
}

}  // namespace

TEST_SUITE("limiters") {

TEST_CASE("minmod examples") {
    CHECK(minmod({1.0, 2.0, 3.0}, 0.0, 1.0) == 1.0);
    CHECK(minmod({1.0, -2.0, 3.0}, 0.0, 1.0) == 0.0);
    CHECK(minmod({0.5, -2.0, 3.0}, 1.0, 1.0) == 0.5);
    CHECK(minmod({-3.0, -2.0, -1.5}, 0.0, 1.0) == -1.5);
    CHECK(minmod3(0.5, -2.0, 3.0, 1.0) == 0.5);
    CHECK(minmod3(2.0, 1.0, 3.0, 0.0) == 1.0);
}

TEST_CASE("config validation and parsing") {
    LimiterConfig c = config(LimiterKind::ISTVB, 0.8);
    CHECK_THROWS_AS(c.validate(), Error);
    CHECK_NOTHROW(config(LimiterKind::ISTVB).validate());
    CHECK_NOTHROW(config(LimiterKind::ISL2TVB, 0.75).validate());
    LimiterConfig bad = config(LimiterKind::ISL2TVB, 0.75);
    bad.w_l2 = 0.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    LimiterConfig neg = config(LimiterKind::ISTVB, 1.0, -1.0);
    CHECK_THROWS_AS(neg.validate(), Error);
    CHECK(parse_limiter("istvb") == LimiterKind::ISTVB);
    CHECK(parse_limiter("isl2") == LimiterKind::ISL2TVB);
    CHECK(parse_indicator("kxrcf") == IndicatorKind::KXRCF);
    CHECK(parse_freeze("roe") == FreezeAverage::Roe);
    CHECK_THROWS_AS(parse_limiter("weno"), Error);
}

TEST_CASE("TVB indicator 1D: linear data is untroubled away from free boundaries") {
    DG1D d(Mesh1D(0.0, 1.0, 10), burgers(1), {FluxKind::ScalarSW}, Boundaries::all(BoundaryKind::Free), 2);
    ModalField u = d.project([](const Point& p) { Vec v(1); v << 3.0 * p.x - 1.0; return v; });
    TvbResult r = indicate_tvb_1d(d, u, 0.0);
    for (int i = 1; i < 9; ++i) CHECK(r.troubled[i] == 0);
}

TEST_CASE("TVB indicator 1D: isolated jump flags the two adjacent cells") {
    DG1D d(Mesh1D(0.0, 1.0, 8), burgers(1), {FluxKind::ScalarSW}, Boundaries{}, 1);
    ModalField u = d.make_field();
    const double s = std::sqrt(d.measure());
    for (int i = 0; i < 8; ++i) u.at(i, 0, 0) = (i >= 2 && i < 6 ? 1.0 : 0.0) * s;
    // cells 1 and 2 slope into the jump between them
    u.at(1, 0, 1) = 0.05;
    u.at(2, 0, 1) = 0.05;
    TvbResult r = indicate_tvb_1d(d, u, 0.0);
    for (int i = 0; i < 8; ++i) CHECK(static_cast<int>(r.troubled[i]) == (i == 1 || i == 2 ? 1 : 0));
}

TEST_CASE("TVB indicator: constant field") {
    DG1D d(Mesh1D(0.0, 1.0, 6), burgers(1), {FluxKind::ScalarSW}, Boundaries{}, 3);
    ModalField u = d.project([](const Point&) { Vec v(1); v << 0.7; return v; });
    TvbResult r = indicate_tvb_1d(d, u, 0.0);
    for (int i = 0; i < 6; ++i) {
        CHECK(r.troubled[i] == 0);
        for (int s = 0; s < 2; ++s) CHECK(std::abs(r.target[i * 2 + s] - 0.7) < 1e-14);
    }
    DG2D d2(Mesh2D(0, 1, 0, 1, 5, 5), burgers(2), {FluxKind::ScalarSW}, Boundaries{}, 2);
    ModalField u2 = d2.project([](const Point&) { Vec v(1); v << -0.3; return v; });
    TvbResult r2 = indicate_tvb_2d(d2, u2, 0.0);
    for (auto f : r2.troubled) CHECK(f == 0);
}

TEST_CASE("TVB indicator 2D: linear in x, step in y") {
    Boundaries bc{{BoundaryKind::Free, BoundaryKind::Free, BoundaryKind::Periodic, BoundaryKind::Periodic}};
    DG2D d(Mesh2D(0, 1, 0, 1, 6, 6), burgers(2), {FluxKind::ScalarSW}, bc, 2);
    ModalField u = d.project([](const Point& p) { Vec v(1); v << 2.0 * p.x; return v; });
    TvbResult r = indicate_tvb_2d(d, u, 0.0);
    for (int j = 0; j < 6; ++j)
        for (int i = 1; i < 5; ++i) CHECK(r.troubled[i + 6 * j] == 0);

    Boundaries free = Boundaries::all(BoundaryKind::Free);
    DG2D ds(Mesh2D(0, 1, 0, 1, 6, 6), burgers(2), {FluxKind::ScalarSW}, free, 1);
    ModalField w = ds.make_field();
    const double s = std::sqrt(ds.measure());
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) {
            int c = i + 6 * j;
            w.at(c, 0, 0) = (j >= 3 ? 1.0 : 0.0) * s;
            if (j == 2 || j == 3) w.at(c, 0, 2) = 0.02;  // y-slope into the step
        }
    TvbResult rs = indicate_tvb_2d(ds, w, 0.0);
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) CHECK(static_cast<int>(rs.troubled[i + 6 * j]) == (j == 2 || j == 3 ? 1 : 0));
}

TEST_CASE("KXRCF: smooth data is untroubled, jumps on inflow faces only") {
    auto adv = std::make_shared<LinearAdvection>(1, [](const Point&, double) { return std::array<double, 2>{1.0, 0.0}; }, 1.0);
    DG1D d(Mesh1D(0.0, 2 * M_PI, 40), adv, {FluxKind::ScalarSW}, Boundaries{}, 2);
    ModalField u = d.project([](const Point& p) { Vec v(1); v << 2.0 + std::sin(p.x); return v; });
    for (auto f : indicate_kxrcf(d, u, 0.0)) CHECK(f == 0);

    DG1D e(Mesh1D(0.0, 1.0, 6), adv, {FluxKind::ScalarSW}, Boundaries{}, 1);
    ModalField w = e.make_field();
    const double s = std::sqrt(e.measure());
    for (int i = 0; i < 6; ++i) w.at(i, 0, 0) = (i >= 3 ? 1.0 : 0.2) * s;
    auto f = indicate_kxrcf(e, w, 0.0);
    // c > 0: cell 3 sees the jump on its inflow (left) face, cell 2 only on its outflow face
    CHECK(f[3] == 1);
    CHECK(f[2] == 0);
    CHECK(f[0] == 1);  // periodic wrap: cell 0's inflow neighbor is cell 5

    // zero state inside a cell: flagged iff the inflow jump is nonzero
    ModalField z = e.make_field();
    z.at(4, 0, 0) = 0.5 * s;
    auto fz = indicate_kxrcf(e, z, 0.0);
    CHECK(fz[5] == 1);
    CHECK(fz[1] == 0);
}

TEST_CASE("M_IS: K=1 closed form, zero on constants, quadratic form equals IS") {
    const double dx = 0.3;
    Eigen::MatrixXd M1 = assemble_M_IS(Basis1D(1), dx);
    REQUIRE(M1.rows() == 1);
    CHECK(std::abs(M1(0, 0) - 24.0 / dx) < 1e-10);

    std::mt19937 rng(9);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int K = 1; K <= 5; ++K) {
        Basis1D b(K);
        Eigen::MatrixXd M = assemble_M_IS(b, dx);
        CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-12 * M.cwiseAbs().maxCoeff());
        CHECK(M.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > -1e-10);
        for (int t = 0; t < 100; ++t) {
            Eigen::VectorXd a(K + 1);
            for (int k = 0; k <= K; ++k) a(k) = N(rng);
            double q = 0.5 * a.tail(K).dot(M * a.tail(K));
            double direct = is_direct_1d(b, dx, a);
            CHECK(std::abs(q - direct) < 1e-10 * (1.0 + std::abs(direct)));
        }
    }
    for (int K = 1; K <= 4; ++K) {
        Basis2D b(K);
        const double dxx = 0.4, dyy = 0.25;
        Eigen::MatrixXd M = assemble_M_IS(b, dxx, dyy);
        for (int t = 0; t < 20; ++t) {
            Eigen::VectorXd a(b.size());
            for (int k = 0; k < b.size(); ++k) a(k) = N(rng);
            double q = 0.5 * a.tail(b.size() - 1).dot(M * a.tail(b.size() - 1));
            double direct = is_direct_2d(b, dxx, dyy, a);
            CHECK(std::abs(q - direct) < 1e-10 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("cell limiter: feasible old polynomial is returned for omega_L2 = 1") {
    DG1D d(Mesh1D(0.0, 1.0, 10), burgers(1), {FluxKind::ScalarSW}, Boundaries{}, 3);
    LimiterConfig c = config(LimiterKind::ISL2TVB, 0.0);
    CellLimiter lim(d, c);
    double a[4] = {0.3, -0.2, 0.05, 0.01}, t[2], out[4];
    Eigen::Map<Eigen::VectorXd> av(a, 4);
    Eigen::VectorXd g = lim.constraints().G * av;
    t[0] = g(0);
    t[1] = g(1);
    lim.limit(a, t, out);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(out[k] - a[k]) < 1e-13);
}

TEST_CASE("cell limiter: K=2 is the unique parabola") {
    const double dx = 0.2;
    DG1D d(Mesh1D(0.0, 2.0, 10), burgers(1), {FluxKind::ScalarSW}, Boundaries{}, 2);
    for (LimiterKind k : {LimiterKind::ClassicalTVB, LimiterKind::ISTVB}) {
        LimiterConfig c = config(k);
        CellLimiter lim(d, c);
        const double m = 0.4, L = 0.1, R = 0.9;
        double a[3] = {m * std::sqrt(dx), 1.0, -1.0}, t[2] = {L, R}, out[3];
        lim.limit(a, t, out);
        double c1 = (R - L) / 2, c2 = (L + R) / 2 - m;
        CHECK(std::abs(out[0] - a[0]) == 0.0);
        CHECK(std::abs(out[1] - c1 * std::sqrt(dx / 3)) < 1e-12);
        CHECK(std::abs(out[2] - c2 * std::sqrt(dx / 5)) < 1e-12);
    }
}

TEST_CASE("saddle system: KKT residual and constraint satisfaction") {
    std::mt19937 rng(21);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int dim : {1, 2})
        for (int K : {2, 3, 4})
            for (double w : {1.0, 0.8, 0.75, 0.0}) {
                std::unique_ptr<Discretization> d;
                if (dim == 1)
                    d = std::make_unique<DG1D>(Mesh1D(0, 1, 8), burgers(1), FluxScheme{FluxKind::ScalarSW}, Boundaries{}, K);
                else
                    d = std::make_unique<DG2D>(Mesh2D(0, 1, 0, 1, 4, 4), burgers(2), FluxScheme{FluxKind::ScalarSW}, Boundaries{}, K);
                LimiterConfig c = config(w == 1.0 ? LimiterKind::ISTVB : LimiterKind::ISL2TVB, w);
                CellLimiter lim(*d, c);
                const int nm = lim.constraints().nmodes, ns = lim.constraints().nsides;
                if (dim == 2 && K == 2 && w == 0.0) continue;
                for (int t = 0; t < 20; ++t) {
                    std::vector<double> a(nm), out(nm), target(ns);
                    for (double& v : a) v = N(rng);
                    for (double& v : target) v = N(rng);
                    lim.limit(a.data(), target.data(), out.data());
                    CHECK(out[0] == a[0]);
                    Eigen::Map<Eigen::VectorXd> ov(out.data(), nm);
                    Eigen::VectorXd g = lim.constraints().G * ov;
                    for (int s = 0; s < ns; ++s) CHECK(std::abs(g(s) - target[s]) < 1e-10);
                    Eigen::MatrixXd A = lim.saddle_matrix();
                    Eigen::VectorXd b = lim.saddle_rhs(a.data(), target.data());
                    Eigen::VectorXd X = A.fullPivLu().solve(b);
                    CHECK((A * X - b).norm() <= 1e-10 * b.norm());
                    for (int k = 1; k < nm; ++k) CHECK(std::abs(X(k - 1) - out[k]) < 1e-9 * (1.0 + std::abs(out[k])));
                }
            }
}

TEST_CASE("objective dominance over sampled feasible polynomials") {
    std::mt19937 rng(33);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int dim : {1, 2}) {
        std::unique_ptr<Discretization> d;
        if (dim == 1)
            d = std::make_unique<DG1D>(Mesh1D(0, 1, 8), burgers(1), FluxScheme{FluxKind::ScalarSW}, Boundaries{}, 3);
        else
            d = std::make_unique<DG2D>(Mesh2D(0, 1, 0, 1, 4, 4), burgers(2), FluxScheme{FluxKind::ScalarSW}, Boundaries{}, 3);
        for (double w : {1.0, 0.0}) {
            LimiterConfig c = config(w == 1.0 ? LimiterKind::ISTVB : LimiterKind::ISL2TVB, w);
            CellLimiter lim(*d, c);
            const CellConstraints& cc = lim.constraints();
            const int nm = cc.nmodes, n = nm - 1, ns = cc.nsides;
            Eigen::MatrixXd Gt = cc.G.rightCols(n);
            Eigen::MatrixXd Z = Gt.fullPivLu().kernel();
            std::vector<double> a(nm), out(nm), target(ns);
            for (double& v : a) v = N(rng);
            for (double& v : target) v = N(rng);
            lim.limit(a.data(), target.data(), out.data());
            Eigen::Map<Eigen::VectorXd> ov(out.data() + 1, n), av(a.data() + 1, n);
            double best_is = IS(lim.M_IS(), out.data(), n), best_l2 = (ov - av).squaredNorm();
            int worse = 0;
            for (int s = 0; s < 1000; ++s) {
                Eigen::VectorXd z(Z.cols());
                for (int k = 0; k < z.size(); ++k) z(k) = N(rng);
                Eigen::VectorXd p = ov + Z * z;  // feasible: same constraints and mean
                double is = 0.5 * p.dot(lim.M_IS() * p), l2 = (p - av).squaredNorm();
                if (w == 1.0 && is < best_is - 1e-10 * (1.0 + best_is)) ++worse;
                if (w == 0.0 && l2 < best_l2 - 1e-10 * (1.0 + best_l2)) ++worse;
            }
            CHECK(worse == 0);
        }
    }
}

TEST_CASE("limiter: smooth data untouched, means preserved, untouched cells bit-identical") {
    DG1D d(Mesh1D(0.0, 2 * M_PI, 64), burgers(1), {FluxKind::ScalarSW}, Boundaries{}, 3);
    ModalField u = d.project([](const Point& p) { Vec v(1); v << std::sin(p.x); return v; });
    ModalField v = u;
    LimitReport rep = apply_limiter(d, v, config(LimiterKind::ISTVB, 1.0, 10.0), 0.0);
    CHECK(rep.count == 0);
    CHECK(v.data == u.data);

    // shocked Burgers state
    CaseSpec cs = make_case("burgers1d-sin");
    cs.N = 20;
    cs.limiter.kind = LimiterKind::None;
    cs.t_end = 1.5;
    RunResult r = run_case(cs);
    for (LimiterKind k : {LimiterKind::ClassicalTVB, LimiterKind::ISTVB, LimiterKind::ISL2TVB})
        for (IndicatorKind ind : {IndicatorKind::BuiltInTVB, IndicatorKind::KXRCF, IndicatorKind::AlwaysOn}) {
            LimiterConfig c = config(k, k == LimiterKind::ISL2TVB ? 0.75 : 1.0);
            c.indicator = ind;
            ModalField w = r.u;
            LimitReport lr = apply_limiter(*r.disc, w, c, r.u.t);
            CHECK(lr.count > 0);
            for (int cell = 0; cell < w.ncells; ++cell) {
                CHECK(w.at(cell, 0, 0) == r.u.at(cell, 0, 0));
                if (!lr.troubled[cell])
                    for (int k2 = 0; k2 < w.nmodes; ++k2) CHECK(w.at(cell, 0, k2) == r.u.at(cell, 0, k2));
            }
        }
}

TEST_CASE("always-on classical limiter keeps linear data") {
    DG1D d(Mesh1D(0.0, 1.0, 10), burgers(1), {FluxKind::ScalarSW}, Boundaries::all(BoundaryKind::Free), 1);
    ModalField u = d.project([](const Point& p) { Vec v(1); v << 1.0 + 2.0 * p.x; return v; });
    ModalField v = u;
    LimiterConfig c = config(LimiterKind::ClassicalTVB);
    c.indicator = IndicatorKind::AlwaysOn;
    apply_limiter(d, v, c, 0.0);
    for (int i = 1; i < 9; ++i)
        for (int k = 0; k < 2; ++k) CHECK(std::abs(v.at(i, 0, k) - u.at(i, 0, k)) < 1e-14);
}

TEST_CASE("2D limiter preserves means and meets edge constraints") {
    CaseSpec cs = make_case("burgers2d-riemann");
    cs.N = 16;
    auto d = make_discretization(cs);
    ModalField u = d->project(cs.init);
    for (LimiterKind k : {LimiterKind::ClassicalTVB, LimiterKind::ISTVB, LimiterKind::ISL2TVB}) {
        LimiterConfig c = config(k, k == LimiterKind::ISL2TVB ? 0.8 : 1.0);
        c.indicator = IndicatorKind::AlwaysOn;
        ModalField w = u;
        apply_limiter(*d, w, c, 0.0);
        for (int cell = 0; cell < w.ncells; ++cell) CHECK(w.at(cell, 0, 0) == u.at(cell, 0, 0));
    }
}

}  // TEST_SUITE
