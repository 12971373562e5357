#include "fvsdg/time_integrators.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "fvsdg/error.hpp"

namespace fvsdg {

IntegratorKind parse_integrator(const std::string& s) {
    if (s == "tvdrk3" || s == "rk3") return IntegratorKind::TVDRK3;
    if (s == "rk4") return IntegratorKind::RK4;
    if (s == "ssprk104" || s == "ssprk(10,4)") return IntegratorKind::SSPRK104;
    fail(ErrorKind::Config, fmt::format("unknown integrator '{}'", s));
}

std::string integrator_name(IntegratorKind k) {
    switch (k) {
        case IntegratorKind::TVDRK3: return "tvdrk3";
        case IntegratorKind::RK4: return "rk4";
        case IntegratorKind::SSPRK104: return "ssprk104";
    }
    return "?";
}

int integrator_order(IntegratorKind k) { return k == IntegratorKind::TVDRK3 ? 3 : 4; }

namespace {

using Terms = std::initializer_list<std::pair<double, const ModalField*>>;

// out = base + sum_k c_k (x_k - base) + sum_j d_j r_j. The increment form
// keeps base bit-identical when every stage equals it and every rate is zero.
void combine(ModalField& out, const ModalField& base, Terms states, Terms rates) {
    const std::size_t n = out.data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double b = base.data[i];
        double s = 0.0;
        for (const auto& [c, f] : states) s += c * (f->data[i] - b);
        for (const auto& [d, r] : rates) s += d * r->data[i];
        out.data[i] = b + s;
    }
}

void check_finite(const ModalField& u, int stage, double t) {
    if (!u.finite()) fail(ErrorKind::Divergence, fmt::format("non-finite solution after stage {} at t={}", stage, t));
}

}  // namespace

ModalField step(IntegratorKind kind, const ModalField& u0, const ResidualOp& L, const LimiterOp& limit, double dt,
                double tn, StepInfo* info) {
    ModalField u = u0;
    ModalField r = u0;
    auto eval = [&](ModalField& v, double t, ModalField& out, int stage) {
        int tc = limit ? limit(v, t) : 0;
        if (stage == 1 && info) info->troubled = tc;
        L(v, t, out);
    };

    switch (kind) {
        case IntegratorKind::TVDRK3: {
            ModalField u1 = u, u2 = u;
            eval(u, tn, r, 1);
            combine(u1, u, {}, {{dt, &r}});
            check_finite(u1, 1, tn);
            eval(u1, tn + dt, r, 2);
            combine(u2, u, {{0.25, &u1}}, {{0.25 * dt, &r}});
            check_finite(u2, 2, tn);
            eval(u2, tn + 0.5 * dt, r, 3);
            ModalField out = u;
            combine(out, u, {{2.0 / 3.0, &u2}}, {{2.0 / 3.0 * dt, &r}});
            check_finite(out, 3, tn);
            out.t = tn + dt;
            return out;
        }
        case IntegratorKind::RK4: {
            ModalField u1 = u, u2 = u, u3 = u;
            eval(u, tn, r, 1);
            combine(u1, u, {}, {{0.5 * dt, &r}});
            check_finite(u1, 1, tn);
            eval(u1, tn + 0.5 * dt, r, 2);
            combine(u2, u, {}, {{0.5 * dt, &r}});
            check_finite(u2, 2, tn);
            eval(u2, tn + 0.5 * dt, r, 3);
            combine(u3, u, {}, {{dt, &r}});
            check_finite(u3, 3, tn);
            eval(u3, tn + dt, r, 4);
            ModalField out = u;
            combine(out, u, {{1.0 / 3.0, &u1}, {2.0 / 3.0, &u2}, {1.0 / 3.0, &u3}}, {{dt / 6.0, &r}});
            check_finite(out, 4, tn);
            out.t = tn + dt;
            return out;
        }
        case IntegratorKind::SSPRK104: {
            // stage times t_n + c dt for u^(0..9)
            static constexpr double c[10] = {0.0,       1.0 / 6.0, 1.0 / 3.0, 0.5,       2.0 / 3.0,
                                             1.0 / 3.0, 0.5,       2.0 / 3.0, 5.0 / 6.0, 1.0};
            ModalField v = u, next = u, u4, r4;
            eval(v, tn, r, 1);
            for (int s = 1; s <= 9; ++s) {
                if (s == 5) {
                    // u^(5) = 3/5 u^n + 2/5 u^(4) + 1/15 dt L(u^(4))
                    u4 = v;
                    r4 = r;
                    combine(next, u, {{0.4, &u4}}, {{dt / 15.0, &r4}});
                } else {
                    combine(next, v, {}, {{dt / 6.0, &r}});
                }
                check_finite(next, s, tn);
                std::swap(v, next);
                eval(v, tn + c[s] * dt, r, s + 1);
            }
            ModalField out = u;
            combine(out, u, {{9.0 / 25.0, &u4}, {3.0 / 5.0, &v}}, {{3.0 / 50.0 * dt, &r4}, {dt / 10.0, &r}});
            check_finite(out, 10, tn);
            out.t = tn + dt;
            return out;
        }
    }
    fail(ErrorKind::Config, "step: unknown integrator");
}

ModalField integrate(Discretization& disc, ModalField u, const LimiterOp& limit, const IntegrateOptions& opt,
                     RunReport* report) {
    require(opt.t_end >= u.t, "t_end precedes the initial time");
    const auto start = std::chrono::steady_clock::now();
    ResidualOp L = [&disc](const ModalField& v, double t, ModalField& out) { disc.residual(v, t, out); };
    RunReport rep;
    long n = 0;
    const double tol = 1e-12 * std::max(1.0, std::abs(opt.t_end));
    while (opt.t_end - u.t > tol) {
        if (n >= opt.max_steps) fail(ErrorKind::Divergence, fmt::format("step limit {} reached at t={}", n, u.t));
        disc.prepare_step(u, u.t);
        double dt = disc.stable_dt(u, opt.cfl, u.t);
        if (!(dt > 0.0) || !std::isfinite(dt))
            fail(ErrorKind::Divergence, fmt::format("invalid time step {} at t={}", dt, u.t));
        if (u.t + dt > opt.t_end - tol) dt = opt.t_end - u.t;
        StepInfo info;
        double tn = u.t;
        u = step(opt.kind, u, L, limit, dt, tn, &info);
        if (u.t + tol >= opt.t_end) u.t = opt.t_end;
        ++n;
        rep.troubled.push_back(info.troubled);
        if (opt.on_step) opt.on_step(n, u);
    }
    if (limit) limit(u, u.t);
    rep.steps = n;
    rep.t_final = u.t;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (report) *report = rep;
    return u;
}

}  // namespace fvsdg
