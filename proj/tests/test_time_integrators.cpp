#include <cmath>
#include <complex>

#include <doctest.h>

#include "fvsdg/cases.hpp"
#include "fvsdg/error.hpp"
#include "fvsdg/exact.hpp"
#include "fvsdg/harness.hpp"
#include "fvsdg/time_integrators.hpp"

using namespace fvsdg;

namespace {

ModalField scalar_field(double v) {
    ModalField f(1, 1, 1, 0);
    f.data[0] = v;
    return f;
}

double run_ode(IntegratorKind k, double dt, double T, const std::function<double(double)>& a) {
    ModalField u = scalar_field(1.0);
    ResidualOp L = [&](const ModalField& v, double t, ModalField& out) {
        out = v;
        out.data[0] = a(t) * v.data[0];
    };
    double t = 0.0;
    const int n = static_cast<int>(std::lround(T / dt));
    for (int i = 0; i < n; ++i, t += dt) u = step(k, u, L, {}, dt, t);
    return u.data[0];
}

}  // namespace

TEST_SUITE("time_integrators") {

TEST_CASE("zero residual leaves the state unchanged") {
    ModalField u(1, 5, 2, 2);
    for (std::size_t i = 0; i < u.data.size(); ++i) u.data[i] = std::sin(1.0 + i);
    ResidualOp zero = [](const ModalField& v, double, ModalField& out) {
        out = v;
        std::fill(out.data.begin(), out.data.end(), 0.0);
    };
    for (IntegratorKind k : {IntegratorKind::TVDRK3, IntegratorKind::RK4, IntegratorKind::SSPRK104}) {
        ModalField v = step(k, u, zero, {}, 0.1, 0.0);
        CHECK(v.data == u.data);
    }
}

TEST_CASE("amplification factors of the linear test equation") {
    const double lam = -1.7, dt = 0.3, z = lam * dt;
    auto one = [&](IntegratorKind k) { return run_ode(k, dt, dt, [&](double) { return lam; }); };
    CHECK(std::abs(one(IntegratorKind::TVDRK3) - (1 + z + z * z / 2 + z * z * z / 6)) < 1e-14);
    CHECK(std::abs(one(IntegratorKind::RK4) - (1 + z + z * z / 2 + z * z * z / 6 + z * z * z * z / 24)) < 1e-14);
    CHECK(std::abs(run_ode(IntegratorKind::SSPRK104, 0.1, 0.1, [](double) { return 1.0; }) - std::exp(0.1)) < 1e-7);
}

TEST_CASE("empirical order on u' = cos(t) u") {
    auto a = [](double t) { return std::cos(t); };
    const double T = 2.0, exact = std::exp(std::sin(T));
    for (auto [k, p] : {std::pair{IntegratorKind::TVDRK3, 3.0}, std::pair{IntegratorKind::RK4, 4.0},
                        std::pair{IntegratorKind::SSPRK104, 4.0}}) {
        double e1 = std::abs(run_ode(k, 0.1, T, a) - exact);
        double e2 = std::abs(run_ode(k, 0.05, T, a) - exact);
        double e3 = std::abs(run_ode(k, 0.025, T, a) - exact);
        CHECK(std::abs(std::log2(e1 / e2) - p) < 0.1);
        CHECK(std::abs(std::log2(e2 / e3) - p) < 0.1);
    }
}

TEST_CASE("non-finite stage raises a divergence error") {
    ModalField u = scalar_field(1.0);
    ResidualOp bad = [](const ModalField& v, double, ModalField& out) {
        out = v;
        out.data[0] = std::nan("");
    };
    try {
        step(IntegratorKind::TVDRK3, u, bad, {}, 0.1, 0.0);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Divergence);
    }
}

TEST_CASE("integrate: zero duration and exact landing on t_end") {
    CaseSpec cs = make_case("advection-sin-t");
    cs.N = 10;
    auto d = make_discretization(cs);
    ModalField u = d->project(cs.init);
    IntegrateOptions opt;
    opt.t_end = 0.0;
    ModalField v = integrate(*d, u, {}, opt);
    CHECK(v.data == u.data);

    opt.t_end = 0.1234;
    opt.cfl = 0.3;
    RunReport rep;
    ModalField w = integrate(*d, u, {}, opt, &rep);
    CHECK(w.t == 0.1234);
    CHECK(rep.steps > 0);
    CHECK(rep.troubled.size() == static_cast<std::size_t>(rep.steps));
}

TEST_CASE("advection over one period returns to the projection") {
    double prev = 0.0;
    for (int N : {10, 20, 40}) {
        CaseSpec cs = make_case("advection-sin-t");
        cs.N = N;
        cs.t_end = 2.0;
        cs.integrator = IntegratorKind::RK4;
        RunResult r = run_case(cs);
        REQUIRE(r.errors);
        double e = r.errors->L2[0];
        if (prev > 0.0) CHECK(std::log2(prev / e) > cs.K + 1 - 0.3);
        prev = e;
    }
}

TEST_CASE("Burgers without limiter past the shock is finite but oscillatory") {
    CaseSpec cs = make_case("burgers1d-sin");
    cs.limiter.kind = LimiterKind::None;
    cs.N = 20;
    RunResult r = run_case(cs);
    CHECK_FALSE(r.diverged);
    CHECK(r.u.finite());
    double mx = 0.0;
    QuadratureRule q = gauss_rule(cs.K + 2);
    for (int c = 0; c < r.u.ncells; ++c)
        for (double xi : q.points) mx = std::max(mx, std::abs(r.disc->eval(r.u, c, xi)(0)));
    CHECK(mx > 1.0 + 1e-3);
}

}  // TEST_SUITE
