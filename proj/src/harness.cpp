#include "fvsdg/harness.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fvsdg/error.hpp"
#include "fvsdg/quadrature.hpp"

namespace fvsdg {

const char* norm_name(Norm n) {
    switch (n) {
        case Norm::L1: return "L1";
        case Norm::L2: return "L2";
        case Norm::Linf: return "Linf";
    }
    return "?";
}

double norm_value(const ErrorNorms& e, Norm n, int comp) {
    switch (n) {
        case Norm::L1: return e.L1[comp];
        case Norm::L2: return e.L2[comp];
        case Norm::Linf: return e.Linf[comp];
    }
    return 0.0;
}

namespace {

// Visit every quadrature point: f(cell, xi, eta, physical point, weight * measure).
template <class F>
void for_each_point(const Discretization& disc, F&& f) {
    QuadratureRule q = gauss_rule(disc.K() + 2);
    const double area = disc.measure();
    const int ny = disc.dim() == 1 ? 1 : q.size();
    for (int cell = 0; cell < disc.ncells(); ++cell) {
        Point c = disc.center(cell);
        for (int gy = 0; gy < ny; ++gy)
            for (int gx = 0; gx < q.size(); ++gx) {
                double xi = q.points[gx], eta = disc.dim() == 1 ? 0.0 : q.points[gy];
                double w = q.weights[gx] * (disc.dim() == 1 ? 1.0 : q.weights[gy]) * area;
                Point p{c.x + xi * disc.width(0), disc.dim() == 1 ? 0.0 : c.y + eta * disc.width(1)};
                f(cell, xi, eta, p, w);
            }
    }
}

ErrorNorms accumulate(const Discretization& disc, int m, const std::function<Vec(int, double, double, const Point&)>& diff) {
    ErrorNorms e;
    e.L1.assign(m, 0.0);
    e.L2.assign(m, 0.0);
    e.Linf.assign(m, 0.0);
    for_each_point(disc, [&](int cell, double xi, double eta, const Point& p, double w) {
        Vec d = diff(cell, xi, eta, p);
        for (int c = 0; c < m; ++c) {
            double a = std::abs(d(c));
            e.L1[c] += w * a;
            e.L2[c] += w * a * a;
            e.Linf[c] = std::max(e.Linf[c], a);
        }
    });
    for (double& v : e.L2) v = std::sqrt(v);
    return e;
}

}  // namespace

ErrorNorms error_norms(const Discretization& disc, const ModalField& u, const ExactSolution& exact, double t) {
    require(static_cast<bool>(exact), "error_norms: no exact solution");
    return accumulate(disc, u.m, [&](int cell, double xi, double eta, const Point& p) {
        return Vec(disc.eval(u, cell, xi, eta) - exact(p, t));
    });
}

ErrorNorms error_norms_vs(const Discretization& disc, const ModalField& u, const Discretization& ref_disc,
                          const ModalField& ref) {
    require(disc.dim() == ref_disc.dim(), "reference mesh dimension differs");
    // Fine cell and reference coordinate of xi in coarse cell i, r fine cells per coarse cell.
    auto locate = [](int i, double xi, int r, int& idx) {
        if (r == 1) {
            idx = i;
            return xi;
        }
        double s = (xi + 0.5) * r;
        int k = std::clamp(static_cast<int>(std::floor(s)), 0, r - 1);
        idx = i * r + k;
        return s - k - 0.5;
    };
    auto ratio = [](int coarse, int fine) {
        require(fine % coarse == 0, "reference mesh is not nested in the study mesh");
        return fine / coarse;
    };
    if (disc.dim() == 1) {
        auto& d = dynamic_cast<const DG1D&>(disc);
        auto& rd = dynamic_cast<const DG1D&>(ref_disc);
        const int r = ratio(d.mesh().n, rd.mesh().n);
        return accumulate(disc, u.m, [&](int cell, double xi, double, const Point&) {
            int i;
            double rxi = locate(cell, xi, r, i);
            return Vec(disc.eval(u, cell, xi, 0.0) - rd.eval(ref, i, rxi, 0.0));
        });
    }
    auto& d = dynamic_cast<const DG2D&>(disc);
    auto& rd = dynamic_cast<const DG2D&>(ref_disc);
    const Mesh2D& m = d.mesh();
    const Mesh2D& rm = rd.mesh();
    const int rx = ratio(m.nx, rm.nx), ry = ratio(m.ny, rm.ny);
    return accumulate(disc, u.m, [&](int cell, double xi, double eta, const Point&) {
        int i, j;
        double rxi = locate(cell % m.nx, xi, rx, i);
        double reta = locate(cell / m.nx, eta, ry, j);
        return Vec(disc.eval(u, cell, xi, eta) - rd.eval(ref, rm.index(i, j), rxi, reta));
    });
}

ErrorNorms normalize(const ErrorNorms& e, double domain_measure) {
    ErrorNorms n = e;
    for (double& v : n.L1) v /= domain_measure;
    for (double& v : n.L2) v /= std::sqrt(domain_measure);
    return n;
}

RunResult run_case(const CaseSpec& cs, const RunOptions& opt) {
    RunResult res;
    res.disc = make_discretization(cs);
    Discretization& disc = *res.disc;
    ModalField u = disc.project(cs.init);

    std::unique_ptr<Limiter> lim;
    if (cs.limiter.kind != LimiterKind::None) lim = std::make_unique<Limiter>(disc, cs.limiter);

    bool pending = true;  // next limiter call is the first stage of a step
    LimitReport first;
    LimiterOp limit;
    if (lim)
        limit = [&](ModalField& v, double t) {
            LimitReport rep = lim->apply(v, t);
            res.freeze_fallbacks += rep.freeze_fallbacks;
            if (pending) {
                first = std::move(rep);
                pending = false;
                return first.count;
            }
            return rep.count;
        };

    ModalField last = u;
    IntegrateOptions io;
    io.kind = cs.integrator;
    io.cfl = cs.cfl;
    io.t_end = cs.t_end;
    io.on_step = [&](long step, const ModalField& v) {
        if (opt.log_troubled && lim)
            for (int cell = 0; cell < v.ncells; ++cell)
                for (int c = 0; c < v.m; ++c)
                    if (first.troubled_comp[static_cast<std::size_t>(cell) * v.m + c])
                        res.troubled.push_back({step, cell, c});
        pending = true;
        last = v;
    };
    try {
        res.u = integrate(disc, u, limit, io, &res.report);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        res.diverged = true;
        res.message = e.what();
        res.u = last;
        return res;
    }
    if (opt.compute_errors && cs.exact) res.errors = error_norms(disc, res.u, cs.exact, res.u.t);
    return res;
}

double ConvergenceStudy::order(Norm n, int comp, int i) const {
    double ec = norm_value(rows[i - 1].err, n, comp), ef = norm_value(rows[i].err, n, comp);
    double ratio = static_cast<double>(rows[i].N) / rows[i - 1].N;
    return std::log(ec / ef) / std::log(ratio);
}

ConvergenceStudy convergence_study(const CaseSpec& cs, const std::vector<int>& meshes, int reference_N) {
    require(!meshes.empty(), "convergence study needs meshes");
    ConvergenceStudy s;
    s.case_name = cs.name;
    s.components = cs.component_names();
    s.normalized = cs.averaged_norms;
    RunResult ref;
    if (!cs.exact) {
        require(reference_N > 0, fmt::format("case '{}' has no exact solution; a reference mesh is needed", cs.name));
        for (int N : meshes)
            require(reference_N % N == 0, "reference mesh must be a multiple of every study mesh");
        CaseSpec rc = cs;
        rc.N = reference_N;
        ref = run_case(rc, {false, false});
        if (ref.diverged) fail(ErrorKind::Divergence, "reference run diverged: " + ref.message);
    }
    for (int N : meshes) {
        CaseSpec c = cs;
        c.N = N;
        RunResult r = run_case(c);
        if (r.diverged) fail(ErrorKind::Divergence, fmt::format("run with N={} diverged: {}", N, r.message));
        StudyRow row;
        row.N = N;
        row.err = cs.exact ? *r.errors : error_norms_vs(*r.disc, r.u, *ref.disc, ref.u);
        if (s.normalized) row.err = normalize(row.err, cs.domain_measure());
        s.rows.push_back(std::move(row));
    }
    return s;
}

std::string format_study(const ConvergenceStudy& s) {
    std::string out = s.normalized ? "L1 and L2 divided by |domain| and |domain|^(1/2)\n" : "";
    out += fmt::format("{:<8} {:<12}", "", "Mesh");
    for (const StudyRow& r : s.rows) out += fmt::format(" {:>12}", r.N);
    out += "\n";
    for (std::size_t c = 0; c < s.components.size(); ++c)
        for (Norm n : {Norm::Linf, Norm::L2, Norm::L1}) {
            out += fmt::format("{:<8} {:<12}", s.components[c], fmt::format("{}-error", norm_name(n)));
            for (const StudyRow& r : s.rows) out += fmt::format(" {:>12.4E}", norm_value(r.err, n, static_cast<int>(c)));
            out += "\n";
            out += fmt::format("{:<8} {:<12} {:>12}", "", fmt::format("{}-order", norm_name(n)), "-");
            for (std::size_t i = 1; i < s.rows.size(); ++i)
                out += fmt::format(" {:>12.4f}", s.order(n, static_cast<int>(c), static_cast<int>(i)));
            out += "\n";
        }
    return out;
}

std::string study_csv(const ConvergenceStudy& s) {
    std::string out = "N";
    for (const std::string& c : s.components)
        for (Norm n : {Norm::L1, Norm::L2, Norm::Linf}) out += fmt::format(",{0}_{1},{0}_{1}_order", c, norm_name(n));
    out += "\n";
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        out += fmt::format("{}", s.rows[i].N);
        for (std::size_t c = 0; c < s.components.size(); ++c)
            for (Norm n : {Norm::L1, Norm::L2, Norm::Linf}) {
                out += fmt::format(",{:.10E}", norm_value(s.rows[i].err, n, static_cast<int>(c)));
                if (i == 0)
                    out += ",";
                else
                    out += fmt::format(",{:.6f}", s.order(n, static_cast<int>(c), static_cast<int>(i)));
            }
        out += "\n";
    }
    return out;
}

}  // namespace fvsdg
