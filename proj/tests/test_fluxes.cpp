#include <cmath>
#include <random>

#include <doctest.h>

#include "fvsdg/error.hpp"
#include "fvsdg/fluxes.hpp"
#include "fvsdg/models.hpp"

using namespace fvsdg;

namespace {

Vec vec(std::initializer_list<double> v) {
    Vec r(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) r(i++) = x;
    return r;
}

double maxabs(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

struct Setup {
    std::shared_ptr<Model> model;
    std::vector<FluxKind> kinds;
};

std::vector<Setup> system_setups() {
    std::vector<FluxKind> all = {FluxKind::StegerWarming, FluxKind::LaxFriedrichsLocal, FluxKind::LaxFriedrichsGlobal,
                                 FluxKind::VanLeer, FluxKind::AUSM};
    return {{std::make_shared<Euler>(1), all},
            {std::make_shared<Euler>(2), all},
            {std::make_shared<ShallowWater>(1), all},
            {std::make_shared<ShallowWater>(2), all}};
}

Vec random_state(std::mt19937& rng, const Model& m) {
    std::uniform_real_distribution<double> r(0.3, 3.0), v(-3.0, 3.0);
    if (auto* e = dynamic_cast<const Euler*>(&m)) return e->conservative(r(rng), v(rng), m.dim() == 2 ? v(rng) : 0.0, r(rng));
    double h = r(rng);
    return m.dim() == 1 ? vec({h, h * v(rng)}) : vec({h, h * v(rng), h * v(rng)});
}

Normal random_normal(std::mt19937& rng, int dim) {
    if (dim == 1) return {1.0, 0.0};
    std::uniform_real_distribution<double> t(0.0, 2 * M_PI);
    double a = t(rng);
    return {std::cos(a), std::sin(a)};
}

FluxScheme scheme(FluxKind k, double M = 0.0) {
    FluxScheme s;
    s.kind = k;
    s.global_M = M;
    return s;
}

}  // namespace

TEST_SUITE("fvs_fluxes") {

TEST_CASE("Steger-Warming eigenvalue split") {
    auto [p, m] = split_eigen_sw(vec({2.0, -3.0, 0.0}), 0.0);
    CHECK(p(0) == 2.0);
    CHECK(m(0) == 0.0);
    CHECK(p(1) == 0.0);
    CHECK(m(1) == -3.0);
    auto [pd, md] = split_eigen_sw(vec({0.0}), 1e-8);
    CHECK(std::abs(pd(0) - 5e-9) < 1e-24);
    CHECK(std::abs(md(0) + 5e-9) < 1e-24);
}

TEST_CASE("Lax-Friedrichs eigenvalue split") {
    auto [p, m] = split_eigen_lf(vec({1.0, -2.0, 0.0}), 2.0);
    CHECK(p(0) == 1.5);
    CHECK(m(0) == -0.5);
    CHECK(p(1) == 0.0);
    CHECK(m(1) == -2.0);
    auto [p1, m1] = split_eigen_lf(vec({0.0}), 1.0);
    CHECK(p1(0) == 0.5);
    CHECK(m1(0) == -0.5);
    CHECK_THROWS_AS(split_eigen_lf(vec({3.0}), 2.0), Error);
}

TEST_CASE("eigen split definiteness and sum") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        Vec l = vec({d(rng), d(rng), d(rng)});
        auto [p, m] = split_eigen_sw(l, 0.0);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(m.maxCoeff() <= 0.0);
        CHECK(maxabs(p + m - l) < 1e-15);
        auto [pl, ml] = split_eigen_lf(l, 5.0);
        CHECK(pl.minCoeff() >= 0.0);
        CHECK(ml.maxCoeff() <= 0.0);
        CHECK(maxabs(pl + ml - l) < 1e-14);
    }
}

TEST_CASE("van Leer Mach split") {
    auto [p, m] = split_mach(0.0);
    CHECK(p == 0.25);
    CHECK(m == -0.25);
    for (double M : {-0.9, -0.3, 0.5}) {
        auto [a, b] = split_mach(M);
        CHECK(std::abs(a + b - M) < 1e-15);
    }
    auto [p2, m2] = split_mach(2.0);
    CHECK(p2 == 2.0);
    CHECK(m2 == 0.0);
}

TEST_CASE("split identity F+ + F- = F for every scheme") {
    std::mt19937 rng(2);
    for (const Setup& s : system_setups())
        for (FluxKind k : s.kinds)
            for (int t = 0; t < 50; ++t) {
                Vec U = random_state(rng, *s.model);
                Normal n = random_normal(rng, s.model->dim());
                double M = s.model->max_speed(U, 0, {}, 0) + s.model->max_speed(U, s.model->dim() - 1, {}, 0);
                SplitFlux f = split_flux(*s.model, scheme(k, M), U, n, {}, 0.0);
                Vec F = s.model->normal_flux(U, n, {}, 0.0);
                CHECK(maxabs(f.plus + f.minus - F) < 1e-12 * (1.0 + maxabs(F)));
            }
}

TEST_CASE("consistency F(U, U) = F(U) for every scheme") {
    std::mt19937 rng(3);
    for (const Setup& s : system_setups())
        for (FluxKind k : s.kinds)
            for (int t = 0; t < 50; ++t) {
                Vec U = random_state(rng, *s.model);
                Normal n = random_normal(rng, s.model->dim());
                double M = s.model->max_speed(U, 0, {}, 0) + s.model->max_speed(U, s.model->dim() - 1, {}, 0);
                Vec F = s.model->normal_flux(U, n, {}, 0.0);
                Vec G = interface_flux(*s.model, scheme(k, M), U, U, n, {}, 0.0);
                CHECK(maxabs(G - F) < 1e-12 * (1.0 + maxabs(F)));
            }
    Burgers b(1);
    LinearAdvection a(1, [](const Point&, double) { return std::array<double, 2>{-1.3, 0.0}; });
    for (double u : {-2.0, -0.1, 0.0, 0.7, 3.0}) {
        CHECK(std::abs(scalar_sw_flux(b, u, u, {1, 0}, {}, 0) - 0.5 * u * u) < 1e-14);
        CHECK(std::abs(scalar_llf_flux(b, u, u, {1, 0}, {}, 0) - 0.5 * u * u) < 1e-14);
        CHECK(std::abs(scalar_sw_flux(a, u, u, {1, 0}, {}, 0) + 1.3 * u) < 1e-14);
    }
}

TEST_CASE("supersonic states select the upwind side") {
    Euler e(1);
    double a = std::sqrt(1.4);
    Vec UL = e.conservative(1.0, 3 * a, 0.0, 1.0), UR = e.conservative(0.5, 3 * a, 0.0, 0.8);
    Vec FL = e.flux(UL, 0, {}, 0.0);
    for (FluxKind k : {FluxKind::StegerWarming, FluxKind::VanLeer, FluxKind::AUSM})
        CHECK(maxabs(interface_flux(e, scheme(k), UL, UR, {1, 0}, {}, 0.0) - FL) < 1e-12);
    // M = 2 for van Leer
    Vec V = e.conservative(1.0, 2 * a, 0.0, 1.0);
    SplitFlux s = split_flux(e, scheme(FluxKind::VanLeer), V, {1, 0}, {}, 0.0);
    CHECK(maxabs(s.minus) == 0.0);
}

TEST_CASE("AUSM pressure split at M = 0") {
    Euler e(1);
    Vec U = e.conservative(1.0, 0.0, 0.0, 1.0);
    SplitFlux s = split_flux(e, scheme(FluxKind::AUSM), U, {1, 0}, {}, 0.0);
    CHECK(std::abs(s.plus(1) - 0.5) < 1e-15);
    CHECK(std::abs(s.minus(1) - 0.5) < 1e-15);
}

TEST_CASE("SWE dam-break states: Steger-Warming A+U assembled explicitly") {
    ShallowWater s(1);
    Vec UL = vec({1.0, 0.0}), UR = vec({0.1, 0.0});
    Vec F = jacobian_fvs_interface_flux(s, scheme(FluxKind::StegerWarming), UL, UR, {1, 0});
    EigenStructure el = s.eigen(UL, {1, 0}), er = s.eigen(UR, {1, 0});
    auto [pl, ml] = split_eigen_sw(el.lambda, 0.0);
    auto [pr, mr] = split_eigen_sw(er.lambda, 0.0);
    Vec G = el.R * pl.asDiagonal() * el.L * UL + er.R * mr.asDiagonal() * er.L * UR;
    CHECK(maxabs(F - G) < 1e-12);
}

TEST_CASE("scalar Steger-Warming flux examples") {
    Burgers b(1);
    CHECK(std::abs(scalar_sw_flux(b, 2.0, 0.0, {1, 0}, {}, 0) - 2.0) < 1e-15);
    LinearAdvection a(1, [](const Point&, double) { return std::array<double, 2>{1.5, 0.0}; });
    CHECK(std::abs(scalar_sw_flux(a, 0.8, -3.0, {1, 0}, {}, 0) - 1.5 * 0.8) < 1e-15);
}

TEST_CASE("scalar LLF flux examples") {
    Burgers b(1);
    CHECK(std::abs(scalar_llf_flux(b, 1.0, -1.0, {1, 0}, {}, 0) - 1.5) < 1e-15);
    LinearAdvection a(1, [](const Point&, double) { return std::array<double, 2>{-2.0, 0.0}; });
    CHECK(std::abs(scalar_llf_flux(a, 0.4, 0.9, {1, 0}, {}, 0) + 2.0 * 0.9) < 1e-15);
    BuckleyLeverett bl;
    double g = scalar_llf_flux(bl, 0.2, 0.8, {1, 0}, {}, 0, 2.4);
    CHECK(std::abs(g - 0.5 * (BuckleyLeverett::f(0.2) + BuckleyLeverett::f(0.8) - 2.4 * 0.6)) < 1e-15);
}

TEST_CASE("scalar Steger-Warming flux is monotone") {
    Burgers b(1);
    LinearAdvection a(1, [](const Point&, double) { return std::array<double, 2>{0.8, 0.0}; });
    LinearAdvection am(1, [](const Point&, double) { return std::array<double, 2>{-1.1, 0.0}; });
    for (const Model* m : {static_cast<const Model*>(&b), static_cast<const Model*>(&a), static_cast<const Model*>(&am)}) {
        const int n = 101;
        const double h = 4.0 / (n - 1);
        int violations = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double uL = -2.0 + i * h, uR = -2.0 + j * h;
                double f = scalar_sw_flux(*m, uL, uR, {1, 0}, {}, 0);
                if (i + 1 < n && scalar_sw_flux(*m, uL + h, uR, {1, 0}, {}, 0) - f < -1e-10) ++violations;
                if (j + 1 < n && scalar_sw_flux(*m, uL, uR + h, {1, 0}, {}, 0) - f > 1e-10) ++violations;
            }
        CHECK(violations == 0);
    }
}

TEST_CASE("scheme compatibility") {
    Burgers b(1);
    Euler e(1);
    CHECK_THROWS_AS(check_compatible(b, scheme(FluxKind::AUSM)), Error);
    CHECK_THROWS_AS(check_compatible(e, scheme(FluxKind::ScalarSW)), Error);
    CHECK_NOTHROW(check_compatible(e, scheme(FluxKind::VanLeer)));
    CHECK(parse_flux("ausm") == FluxKind::AUSM);
    CHECK_THROWS_AS(parse_flux("hllc"), Error);
}

}  // TEST_SUITE
