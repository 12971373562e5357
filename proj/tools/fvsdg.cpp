// Command-line runner: one case per invocation, optional convergence study.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fvsdg/cases.hpp"
#include "fvsdg/error.hpp"
#include "fvsdg/harness.hpp"
#include "fvsdg/io.hpp"
#include "fvsdg/parallel.hpp"

using namespace fvsdg;

namespace {

constexpr int kExitDiverged = 2;
constexpr int kExitConfig = 3;

std::vector<int> parse_meshes(const std::string& s, const CaseSpec& cs) {
    if (s == "default") {
        require(!cs.study_meshes.empty(), fmt::format("case '{}' has no default mesh sequence", cs.name));
        return cs.study_meshes;
    }
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            fail(ErrorKind::Config, fmt::format("bad mesh size '{}'", item));
        }
        require(out.back() >= 4, "mesh sizes must be >= 4");
    }
    require(out.size() >= 3, "a convergence study needs at least 3 meshes");
    for (std::size_t i = 1; i < out.size(); ++i) require(out[i] == 2 * out[i - 1], "each study mesh must double the last");
    return out;
}

void print_errors(const CaseSpec& cs, const ErrorNorms& e) {
    auto names = cs.component_names();
    fmt::print("{:<8} {:>14} {:>14} {:>14}\n", "comp", "L1", "L2", "Linf");
    for (std::size_t c = 0; c < names.size(); ++c)
        fmt::print("{:<8} {:>14.6E} {:>14.6E} {:>14.6E}\n", names[c], e.L1[c], e.L2[c], e.Linf[c]);
}

int run(int argc, char** argv) {
    CLI::App app{"FVS-RKDG solver for 1D/2D hyperbolic conservation laws"};
    std::string config_path;
    ConfigMap cli;
    bool list = false;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_flag("--list", list, "list the registered cases and exit");
    auto opt = [&](const char* flag, const char* key, const char* help) {
        app.add_option_function<std::string>(flag, [&cli, key](const std::string& v) { cli[key] = v; }, help);
    };
    opt("--case", "case", "case name (see --list)");
    opt("--K", "K", "polynomial degree");
    opt("--N", "N", "cells per direction");
    opt("--cfl", "cfl", "CFL number");
    opt("--t-end", "t_end", "final time");
    opt("--flux", "flux", "sw, lf-local, lf-global, vanleer, ausm, scalar-sw, llf");
    opt("--delta", "delta", "Steger-Warming smoothing");
    opt("--alpha", "alpha", "fixed global alpha of the scalar LLF flux");
    opt("--integrator", "integrator", "tvdrk3, rk4, ssprk104");
    opt("--limiter", "limiter", "none, tvb, istvb, isl2");
    opt("--wis", "wis", "IS weight");
    opt("--wl2", "wl2", "L2 weight");
    opt("--tvb-M", "tvb_M", "TVB parameter M");
    opt("--indicator", "indicator", "tvb, kxrcf, always");
    opt("--characteristic", "characteristic", "limit in characteristic variables (0/1)");
    opt("--freeze", "freeze", "arithmetic or roe interface state");
    opt("--out", "out", "output directory");
    opt("--threads", "threads", "worker threads");
    opt("--study", "study", "mesh list such as 10,20,40 or 'default'");
    opt("--reference", "reference", "reference mesh for cases without exact solution");
    opt("--seed", "seed", "random seed recorded with the run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (list) {
        for (const std::string& n : case_names()) {
            CaseSpec cs = make_case(n);
            fmt::print("{:<20} {}{}\n", n, cs.description, cs.full_scale ? "" : " [reduced]");
        }
        return 0;
    }

    ConfigMap cfg = config_path.empty() ? ConfigMap{} : load_config(config_path);
    for (auto& [k, v] : cli) cfg[k] = v;
    require(cfg.count("case") > 0, "no case given (use --case or a config file)");

    CaseSpec cs = make_case(cfg["case"]);
    std::vector<std::string> used = apply_overrides(cs, cfg);
    for (const auto& [k, v] : cfg) {
        bool known = k == "case" || k == "out" || k == "threads" || k == "study" || k == "reference" || k == "seed";
        if (!known && std::find(used.begin(), used.end(), k) == used.end())
            fail(ErrorKind::Config, fmt::format("unknown configuration key '{}'", k));
    }

    int nthreads = 0;
    if (cfg.count("threads"))
        nthreads = std::stoi(cfg["threads"]);
    else if (const char* env = std::getenv("FVSDG_THREADS"))
        nthreads = std::atoi(env);
    if (nthreads > 0) set_threads(nthreads);

    std::filesystem::path out = cfg.count("out") ? cfg["out"] : std::string{};

    if (cfg.count("study")) {
        std::vector<int> meshes = parse_meshes(cfg["study"], cs);
        int ref = cfg.count("reference") ? std::stoi(cfg["reference"]) : cs.reference_N;
        ConvergenceStudy s = convergence_study(cs, meshes, ref);
        std::string table = format_study(s);
        fmt::print("{} K={} flux={} cfl={}\n{}", cs.name, cs.K, flux_name(cs.flux.kind), cs.cfl, table);
        if (!out.empty()) {
            write_text(out / "study.txt", table);
            write_text(out / "study.csv", study_csv(s));
        }
        return 0;
    }

    RunResult r = run_case(cs, {true, true});
    fmt::print("{} K={} N={} flux={} integrator={} limiter={} cfl={}\n", cs.name, cs.K, cs.N, flux_name(cs.flux.kind),
               integrator_name(cs.integrator), limiter_name(cs.limiter.kind), cs.cfl);
    fmt::print("t = {:.6g}, steps = {}, wall = {:.2f} s\n", r.u.t, r.report.steps, r.report.wall_seconds);
    if (r.errors) print_errors(cs, *r.errors);
    if (!out.empty()) {
        auto names = cs.component_names();
        write_text(out / "solution.csv", solution_csv(*r.disc, r.u, names));
        write_text(out / "means.csv", means_csv(*r.disc, r.u, names));
        write_text(out / "troubled.csv", troubled_csv(r.troubled));
        write_text(out / "plot.gp", gnuplot_script(cs));
    }
    if (r.diverged) {
        fmt::print(stderr, "diverged: {}\n", r.message);
        return kExitDiverged;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return e.kind() == ErrorKind::Config ? kExitConfig : kExitDiverged;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitConfig;
    }
}
