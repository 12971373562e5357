#include "fvsdg/cases.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fvsdg/error.hpp"
#include "fvsdg/exact.hpp"

namespace fvsdg {

namespace {

constexpr double kPi = std::numbers::pi;

Vec scalar(double u) {
    Vec v(1);
    v(0) = u;
    return v;
}

FluxScheme flux(FluxKind k, double alpha = 0.0) {
    FluxScheme f;
    f.kind = k;
    f.alpha = alpha;
    return f;
}

LimiterConfig limiter(LimiterKind kind, double w_is, double w_l2, double M) {
    LimiterConfig c;
    c.kind = kind;
    c.w_is = w_is;
    c.w_l2 = w_l2;
    c.tvb_M = M;
    c.indicator = IndicatorKind::BuiltInTVB;
    return c;
}

std::shared_ptr<const Euler> euler(int dim) { return std::make_shared<Euler>(dim); }

InitialData euler_state_1d(std::shared_ptr<const Euler> e, std::function<std::array<double, 3>(double)> prim) {
    return [e, prim](const Point& p) {
        auto [rho, u, P] = prim(p.x);
        return e->conservative(rho, u, 0.0, P);
    };
}

InitialData euler_quadrants(std::shared_ptr<const Euler> e, double xc, double yc,
                            std::array<std::array<double, 4>, 4> q) {
    // q: upper right, upper left, lower left, lower right as (rho, u, v, P)
    return [e, xc, yc, q](const Point& p) {
        int k = p.y > yc ? (p.x > xc ? 0 : 1) : (p.x < xc ? 2 : 3);
        return e->conservative(q[k][0], q[k][1], q[k][2], q[k][3]);
    };
}

CaseSpec euler1d_smooth(int K, FluxKind fk) {
    CaseSpec cs;
    auto e = euler(1);
    cs.dim = 1;
    cs.model = e;
    cs.ax = 0.0;
    cs.bx = 2.0;
    cs.bc = Boundaries::all(BoundaryKind::Periodic);
    cs.t_end = 1.0;
    cs.K = K;
    cs.N = 10;
    cs.flux = flux(fk);
    cs.cfl = 0.1;
    cs.init = euler_state_1d(e, [](double x) { return std::array<double, 3>{1.0 + 0.2 * std::cos(kPi * x), -0.7, 1.0}; });
    cs.exact = [e](const Point& p, double t) { return e->conservative(1.0 + 0.2 * std::cos(kPi * (p.x + 0.7 * t)), -0.7, 0.0, 1.0); };
    cs.study_meshes = {10, 20, 40, 80, 160};
    cs.averaged_norms = true;
    return cs;
}

// Slotted disk, cone and smooth hump on [-pi, pi]^2.
double swirl_initial(double x, double y) {
    double X = (x + kPi) / (2.0 * kPi), Y = (y + kPi) / (2.0 * kPi);
    const double r0 = 0.15;
    double rd = std::hypot(X - 0.5, Y - 0.75);
    if (rd <= r0 && (std::abs(X - 0.5) >= 0.025 || Y >= 0.85)) return 1.0;
    double rc = std::hypot(X - 0.5, Y - 0.25);
    if (rc <= r0) return 1.0 - rc / r0;
    double rh = std::hypot(X - 0.25, Y - 0.5);
    if (rh <= r0) return 0.25 * (1.0 + std::cos(kPi * rh / r0));
    return 0.0;
}

CaseSpec build(const std::string& name) {
    CaseSpec cs;
    if (name == "euler1d-smooth") {
        cs = euler1d_smooth(2, FluxKind::AUSM);
        cs.description = "1D Euler smooth density wave, P2 AUSM";
    } else if (name == "euler1d-smooth-sw") {
        cs = euler1d_smooth(3, FluxKind::StegerWarming);
        cs.description = "1D Euler smooth density wave, P3 Steger-Warming";
    } else if (name == "swe1d-smooth") {
        cs.dim = 1;
        auto swe = std::make_shared<ShallowWater>(1, 9.8120, [](double x) { return kPi * std::sin(2.0 * kPi * x); });
        cs.model = swe;
        cs.ax = 0.0;
        cs.bx = 1.0;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 0.075;
        cs.K = 2;
        cs.N = 50;
        cs.flux = flux(FluxKind::VanLeer);
        cs.cfl = 0.01;
        cs.init = [](const Point& p) {
            double h = 5.0 + std::exp(std::cos(2.0 * kPi * p.x));
            Vec U(2);
            U << h, std::sin(std::cos(2.0 * kPi * p.x));
            return U;
        };
        cs.study_meshes = {50, 100, 200, 400, 800};
        cs.reference_N = 1600;
        cs.description = "1D shallow water over z = sin^2(pi x), P2 van Leer, reference-mesh errors";
    } else if (name == "euler2d-smooth") {
        auto e = euler(2);
        cs.dim = 2;
        cs.model = e;
        cs.ax = 0.0;
        cs.bx = 2.0;
        cs.ay = -1.0;
        cs.by = 1.0;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 1.0;
        cs.K = 3;
        cs.N = 10;
        cs.flux = flux(FluxKind::AUSM);
        cs.integrator = IntegratorKind::RK4;
        cs.cfl = 0.01;
        cs.init = [e](const Point& p) {
            return e->conservative(1.0 + 0.2 * std::cos(kPi * p.x + kPi * p.y), -0.7, 0.3, 1.0);
        };
        cs.exact = [e](const Point& p, double t) {
            return e->conservative(1.0 + 0.2 * std::cos(kPi * (p.x + 0.7 * t) + kPi * (p.y - 0.3 * t)), -0.7, 0.3, 1.0);
        };
        cs.study_meshes = {10, 20, 40};
        cs.description = "2D Euler smooth density wave on rectangles, P3 AUSM";
    } else if (name == "sod") {
        auto e = euler(1);
        cs.dim = 1;
        cs.model = e;
        cs.ax = -1.0;
        cs.bx = 1.0;
        cs.bc = Boundaries::all(BoundaryKind::Free);
        cs.t_end = 0.2;
        cs.K = 3;
        cs.N = 400;
        cs.flux = flux(FluxKind::StegerWarming);
        cs.cfl = 0.05;
        cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 1.0);
        cs.init = euler_state_1d(e, [](double x) {
            return x < 0.0 ? std::array<double, 3>{1.0, 0.0, 1.0} : std::array<double, 3>{0.125, 0.0, 0.1};
        });
        cs.description = "Sod shock tube";
    } else if (name == "lax" || name == "lax-desk") {
        auto e = euler(1);
        cs.dim = 1;
        cs.model = e;
        cs.ax = -5.0;
        cs.bx = 5.0;
        cs.bc = Boundaries::all(BoundaryKind::Free);
        cs.t_end = 1.3;
        cs.K = 3;
        cs.N = name == "lax" ? 2000 : 400;
        cs.full_scale = name == "lax";
        cs.flux = flux(FluxKind::VanLeer);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 1.0);
        cs.init = euler_state_1d(e, [](double x) {
            return x < 0.0 ? std::array<double, 3>{0.445, 0.698, 3.528} : std::array<double, 3>{0.5, 0.0, 0.571};
        });
        cs.description = name == "lax" ? "Lax shock tube" : "Lax shock tube, reduced 400-cell mesh";
    } else if (name == "shu-osher") {
        auto e = euler(1);
        cs.dim = 1;
        cs.model = e;
        cs.ax = -5.0;
        cs.bx = 5.0;
        cs.bc = Boundaries::all(BoundaryKind::Free);
        cs.t_end = 1.8;
        cs.K = 5;
        cs.N = 500;
        cs.flux = flux(FluxKind::StegerWarming);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISL2TVB, 0.75, 0.25, 1.0);
        cs.init = euler_state_1d(e, [](double x) {
            return x < -4.0 ? std::array<double, 3>{3.857143, 2.629369, 10.333333}
                            : std::array<double, 3>{1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0};
        });
        cs.description = "Shu-Osher shock-entropy wave interaction";
    } else if (name == "blast") {
        auto e = euler(1);
        cs.dim = 1;
        cs.model = e;
        cs.ax = 0.0;
        cs.bx = 1.0;
        cs.bc = Boundaries::all(BoundaryKind::Reflective);
        cs.t_end = 0.026;
        cs.K = 2;
        cs.N = 800;
        cs.flux = flux(FluxKind::AUSM);
        cs.cfl = 0.005;
        cs.limiter = limiter(LimiterKind::ISL2TVB, 0.8, 0.2, 1.0);
        cs.init = euler_state_1d(e, [](double x) {
            double P = x < 0.1 ? 1e3 : (x <= 0.9 ? 1e-2 : 1e2);
            return std::array<double, 3>{1.0, 0.0, P};
        });
        cs.description = "Woodward-Colella blast waves";
    } else if (name == "dambreak") {
        cs.dim = 1;
        cs.model = std::make_shared<ShallowWater>(1);
        cs.ax = -1.0;
        cs.bx = 1.0;
        cs.bc = Boundaries::all(BoundaryKind::Free);
        cs.t_end = 0.2;
        cs.K = 4;
        cs.N = 200;
        cs.flux = flux(FluxKind::VanLeer);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISL2TVB, 0.75, 0.25, 0.0);
        cs.init = [](const Point& p) {
            Vec U(2);
            U << (p.x < 0.0 ? 1.0 : 0.1), 0.0;
            return U;
        };
        cs.description = "Dam break on a flat bed";
    } else if (name == "riemann2d-1" || name == "riemann2d-2" || name == "riemann2d-3") {
        auto e = euler(2);
        cs.dim = 2;
        cs.model = e;
        cs.bc = Boundaries::all(BoundaryKind::Free);
        std::array<std::array<double, 4>, 4> sym{{{0.5313, 0.0, 0.0, 0.4},
                                                  {1.0, 0.7276, 0.0, 1.0},
                                                  {0.8, 0.0, 0.0, 1.0},
                                                  {1.0, 0.0, 0.7276, 1.0}}};
        if (name == "riemann2d-1") {
            cs.bx = cs.by = 0.1;
            cs.t_end = 0.022;
            cs.K = 3;
            cs.N = 40;
            cs.flux = flux(FluxKind::StegerWarming);
            cs.limiter = limiter(LimiterKind::ISL2TVB, 0.8, 0.2, 1.0);
            cs.init = euler_quadrants(e, 0.05, 0.05, sym);
        } else if (name == "riemann2d-2") {
            cs.t_end = 0.25;
            cs.K = 2;
            cs.N = 100;
            cs.flux = flux(FluxKind::AUSM);
            cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 1.0);
            cs.init = euler_quadrants(e, 0.5, 0.5,
                                      {{{1.1, 0.0, 0.0, 1.1},
                                        {0.5065, 0.8939, 0.0, 0.35},
                                        {1.1, 0.8939, 0.8939, 1.1},
                                        {0.5065, 0.0, 0.8939, 0.35}}});
        } else {
            cs.t_end = 0.3;
            cs.K = 2;
            cs.N = 100;
            cs.flux = flux(FluxKind::StegerWarming);
            cs.limiter = limiter(LimiterKind::ISL2TVB, 0.8, 0.2, 1.0);
            cs.init = euler_quadrants(e, 0.5, 0.5, sym);
        }
        cs.cfl = 0.2;
        cs.description = fmt::format("2D Riemann problem, configuration {}", name.back());
    } else if (name == "burgers1d-sin") {
        cs.dim = 1;
        cs.model = std::make_shared<Burgers>(1);
        cs.ax = 0.0;
        cs.bx = 2.0 * kPi;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 2.0;
        cs.K = 3;
        cs.N = 20;
        cs.flux = flux(FluxKind::ScalarLLF);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 0.0);
        cs.init = [](const Point& p) { return scalar(std::sin(p.x)); };
        cs.exact = [](const Point& p, double t) { return scalar(exact::burgers_sin(p.x, t)); };
        cs.description = "Burgers, u0 = sin x, shock forms at t = 1";
    } else if (name == "burgers1d-smooth") {
        cs.dim = 1;
        cs.model = std::make_shared<Burgers>(1);
        cs.ax = 0.0;
        cs.bx = 2.0 * kPi;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 0.6;
        cs.K = 5;
        cs.N = 20;
        cs.flux = flux(FluxKind::ScalarSW);
        cs.integrator = IntegratorKind::RK4;
        cs.cfl = 0.05;
        cs.init = [](const Point& p) { return scalar(std::sin(p.x)); };
        cs.exact = [](const Point& p, double t) { return scalar(exact::burgers_sin(p.x, t)); };
        cs.study_meshes = {20, 40, 80, 160, 320};
        cs.description = "Burgers accuracy before the shock, P5 scalar Steger-Warming";
    } else if (name == "burgers2d-smooth" || name == "burgers2d-accuracy") {
        cs.dim = 2;
        cs.model = std::make_shared<Burgers>(2);
        cs.bx = cs.by = 4.0;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.init = [](const Point& p) { return scalar(std::sin(0.5 * kPi * (p.x + p.y))); };
        // along xi = x + y the solution is the 1D sine solution in theta = pi xi / 2 at time pi t
        cs.exact = [](const Point& p, double t) { return scalar(exact::burgers_sin(0.5 * kPi * (p.x + p.y), kPi * t)); };
        if (name == "burgers2d-smooth") {
            cs.t_end = 1.5 / kPi;
            cs.K = 3;
            cs.N = 50;
            cs.flux = flux(FluxKind::ScalarLLF);
            cs.cfl = 0.1;
            cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 1.0);
            cs.description = "2D Burgers, smooth data steepening into a shock";
        } else {
            cs.t_end = 0.5 / kPi;
            cs.K = 2;
            cs.N = 15;
            cs.flux = flux(FluxKind::ScalarSW);
            cs.cfl = 0.05;
            cs.study_meshes = {15, 30, 60, 120};
            cs.description = "2D Burgers accuracy before the shock, P2 scalar Steger-Warming";
        }
    } else if (name == "burgers2d-riemann") {
        cs.dim = 2;
        cs.model = std::make_shared<Burgers>(2);
        cs.bx = cs.by = 0.1;
        cs.bc = Boundaries::all(BoundaryKind::Free);
        cs.t_end = 0.05;
        cs.K = 3;
        cs.N = 50;
        cs.flux = flux(FluxKind::ScalarSW);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 1.0);
        cs.init = [](const Point& p) {
            double u = p.y < 0.05 ? (p.x < 0.05 ? 0.5 : 0.8) : (p.x > 0.05 ? -1.0 : -0.2);
            return scalar(u);
        };
        cs.description = "2D Burgers four-state Riemann problem";
    } else if (name == "buckley-leverett") {
        cs.dim = 1;
        cs.model = std::make_shared<BuckleyLeverett>();
        cs.ax = -1.0;
        cs.bx = 1.0;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 0.4;
        cs.K = 3;
        cs.N = 80;
        cs.flux = flux(FluxKind::ScalarLLF, 2.4);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISTVB, 1.0, 0.0, 1.0);
        cs.init = [](const Point& p) { return scalar(p.x >= -0.5 && p.x <= 0.0 ? 1.0 : 0.0); };
        cs.description = "Buckley-Leverett, non-convex flux";
    } else if (name == "swirl-deform") {
        cs.dim = 2;
        const double T = 0.75;
        auto vel = [T](const Point& p, double t) {
            double g = 2.0 * kPi * std::cos(kPi * t / T);
            double cx = std::cos(0.5 * p.x), cy = std::cos(0.5 * p.y);
            return std::array<double, 2>{-cx * cx * std::sin(p.y) * g, std::sin(p.x) * cy * cy * g};
        };
        cs.model = std::make_shared<LinearAdvection>(2, vel, 2.0 * kPi, "swirl");
        cs.ax = cs.ay = -kPi;
        cs.bx = cs.by = kPi;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = T;
        cs.K = 3;
        cs.N = 120;
        cs.flux = flux(FluxKind::ScalarSW);
        cs.cfl = 0.1;
        cs.limiter = limiter(LimiterKind::ISL2TVB, 0.75, 0.25, 1.0);
        cs.init = [](const Point& p) { return scalar(swirl_initial(p.x, p.y)); };
        cs.description = "Swirling deformation flow of a slotted disk, cone and hump";
    } else if (name == "advection-sin-t") {
        const double w = kPi;
        cs.dim = 1;
        cs.model = std::make_shared<LinearAdvection>(
            1, [w](const Point&, double t) { return std::array<double, 2>{std::sin(w * t), 0.0}; }, 1.0, "advection-sin-t");
        cs.ax = 0.0;
        cs.bx = 2.0 * kPi;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 20.0;
        cs.K = 2;
        cs.N = 20;
        cs.flux = flux(FluxKind::ScalarSW);
        cs.cfl = 0.1;
        cs.init = [](const Point& p) { return scalar(std::sin(p.x)); };
        cs.exact = [w](const Point& p, double t) { return scalar(exact::advection_sin_t(p.x, t, w)); };
        cs.study_meshes = {20, 40, 80, 160, 320};
        cs.description = "u_t + (sin(pi t) u)_x = 0 over ten periods";
    } else if (name == "advection-sin-x") {
        cs.dim = 1;
        cs.model = std::make_shared<LinearAdvection>(
            1, [](const Point& p, double) { return std::array<double, 2>{std::sin(p.x), 0.0}; }, 1.0, "advection-sin-x");
        cs.ax = 0.0;
        cs.bx = 2.0 * kPi;
        cs.bc = Boundaries::all(BoundaryKind::Periodic);
        cs.t_end = 1.0;
        cs.K = 5;
        cs.N = 20;
        cs.flux = flux(FluxKind::ScalarSW);
        cs.integrator = IntegratorKind::RK4;
        cs.cfl = 0.05;
        cs.init = [](const Point&) { return scalar(1.0); };
        cs.exact = [](const Point& p, double t) { return scalar(exact::advection_sin_x(p.x, t)); };
        cs.study_meshes = {20, 40, 80, 160, 320};
        cs.description = "u_t + (sin(x) u)_x = 0 from constant data";
    } else {
        fail(ErrorKind::Config, fmt::format("unknown case '{}'", name));
    }
    cs.name = name;
    return cs;
}

}  // namespace

std::vector<std::string> CaseSpec::component_names() const {
    const std::string n = model->name();
    if (n.rfind("euler", 0) == 0) return dim == 1 ? std::vector<std::string>{"rho", "rhou", "E"}
                                                  : std::vector<std::string>{"rho", "rhou", "rhov", "E"};
    if (n.rfind("swe", 0) == 0) return dim == 1 ? std::vector<std::string>{"h", "hu"}
                                                : std::vector<std::string>{"h", "hu", "hv"};
    return {"u"};
}

const std::vector<std::string>& case_names() {
    static const std::vector<std::string> names{
        "euler1d-smooth", "euler1d-smooth-sw", "swe1d-smooth",     "euler2d-smooth",   "sod",
        "lax",            "lax-desk",          "shu-osher",        "blast",            "dambreak",
        "riemann2d-1",    "riemann2d-2",       "riemann2d-3",      "burgers1d-sin",    "burgers1d-smooth",
        "burgers2d-smooth", "burgers2d-accuracy", "burgers2d-riemann", "buckley-leverett", "swirl-deform",
        "advection-sin-t", "advection-sin-x"};
    return names;
}

CaseSpec make_case(const std::string& name) { return build(name); }

std::unique_ptr<Discretization> make_discretization(const CaseSpec& cs) {
    require(cs.N >= 4, "mesh size must be at least 4");
    require(cs.K >= 0, "K must be nonnegative");
    require(cs.cfl > 0.0, "cfl must be positive");
    if (cs.dim == 1) return std::make_unique<DG1D>(Mesh1D(cs.ax, cs.bx, cs.N), cs.model, cs.flux, cs.bc, cs.K);
    return std::make_unique<DG2D>(Mesh2D(cs.ax, cs.bx, cs.ay, cs.by, cs.N, cs.N), cs.model, cs.flux, cs.bc, cs.K);
}

}  // namespace fvsdg
