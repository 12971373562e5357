#include "fvsdg/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fvsdg/error.hpp"
#include "fvsdg/quadrature.hpp"

namespace fvsdg {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos == v.size()) return d;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Config, fmt::format("{}: '{}' is not a number", key, v));
}

int to_int(const std::string& key, const std::string& v) {
    double d = to_double(key, v);
    if (d != static_cast<int>(d)) fail(ErrorKind::Config, fmt::format("{}: '{}' is not an integer", key, v));
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    fail(ErrorKind::Config, fmt::format("{}: '{}' is not a boolean", key, v));
}

// Reference nodes per axis: Gauss nodes plus the center, ascending.
std::vector<double> output_nodes(int K) {
    std::vector<double> xs = gauss_rule(K + 2).points;
    if (std::none_of(xs.begin(), xs.end(), [](double x) { return std::abs(x) < 1e-14; })) xs.push_back(0.0);
    std::sort(xs.begin(), xs.end());
    return xs;
}

std::string header(int dim, const std::vector<std::string>& names) {
    std::string h = dim == 1 ? "x" : "x,y";
    for (const std::string& n : names) h += "," + n;
    return h + "\n";
}

void append_row(std::string& out, int dim, const Point& p, const Vec& v) {
    out += fmt::format("{:.16g}", p.x);
    if (dim == 2) out += fmt::format(",{:.16g}", p.y);
    for (int c = 0; c < v.size(); ++c) out += fmt::format(",{:.16g}", v(c));
    out += "\n";
}

}  // namespace

ConfigMap parse_config(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Config, fmt::format("config line {}: expected key = value", lineno));
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) fail(ErrorKind::Config, fmt::format("config line {}: empty key", lineno));
        cfg[key] = value;
    }
    return cfg;
}

ConfigMap load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Config, fmt::format("cannot open config '{}'", path.string()));
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> apply_overrides(CaseSpec& cs, const ConfigMap& cfg) {
    std::vector<std::string> used;
    auto get = [&](const char* key, auto&& apply) {
        auto it = cfg.find(key);
        if (it == cfg.end()) return;
        apply(it->second);
        used.push_back(key);
    };
    get("K", [&](const std::string& v) { cs.K = to_int("K", v); });
    get("N", [&](const std::string& v) { cs.N = to_int("N", v); });
    get("cfl", [&](const std::string& v) { cs.cfl = to_double("cfl", v); });
    get("t_end", [&](const std::string& v) { cs.t_end = to_double("t_end", v); });
    get("flux", [&](const std::string& v) {
        FluxKind k = parse_flux(v);
        if (cs.model->scalar() && k == FluxKind::StegerWarming) k = FluxKind::ScalarSW;
        if (cs.model->scalar() && k == FluxKind::LaxFriedrichsLocal) k = FluxKind::ScalarLLF;
        cs.flux.kind = k;
    });
    get("delta", [&](const std::string& v) { cs.flux.delta = to_double("delta", v); });
    get("alpha", [&](const std::string& v) { cs.flux.alpha = to_double("alpha", v); });
    get("integrator", [&](const std::string& v) { cs.integrator = parse_integrator(v); });
    get("limiter", [&](const std::string& v) {
        cs.limiter.kind = parse_limiter(v);
        if (cs.limiter.kind == LimiterKind::ISTVB) {
            cs.limiter.w_is = 1.0;
            cs.limiter.w_l2 = 0.0;
        }
    });
    get("wis", [&](const std::string& v) { cs.limiter.w_is = to_double("wis", v); });
    get("wl2", [&](const std::string& v) { cs.limiter.w_l2 = to_double("wl2", v); });
    get("tvb_M", [&](const std::string& v) { cs.limiter.tvb_M = to_double("tvb_M", v); });
    get("indicator", [&](const std::string& v) { cs.limiter.indicator = parse_indicator(v); });
    get("characteristic", [&](const std::string& v) { cs.limiter.characteristic = to_bool("characteristic", v); });
    get("freeze", [&](const std::string& v) { cs.limiter.freeze = parse_freeze(v); });

    require(cs.K >= 0, "K must be >= 0");
    require(cs.N >= 4, "N must be >= 4");
    require(cs.cfl > 0.0, "cfl must be positive");
    require(cs.t_end >= 0.0, "t_end must be >= 0");
    check_compatible(*cs.model, cs.flux);
    cs.limiter.validate();
    return used;
}

std::string solution_csv(const Discretization& disc, const ModalField& u, const std::vector<std::string>& names) {
    const int dim = disc.dim();
    std::vector<double> xs = output_nodes(disc.K());
    std::string out = header(dim, names);
    if (dim == 1) {
        for (int cell = 0; cell < disc.ncells(); ++cell) {
            Point c = disc.center(cell);
            for (double xi : xs) append_row(out, 1, {c.x + xi * disc.width(0), 0.0}, disc.eval(u, cell, xi));
        }
        return out;
    }
    // rows ordered by y then x over the whole mesh so gnuplot sees scan lines
    auto& d2 = dynamic_cast<const DG2D&>(disc);
    const Mesh2D& m = d2.mesh();
    for (int j = 0; j < m.ny; ++j)
        for (double eta : xs) {
            for (int i = 0; i < m.nx; ++i)
                for (double xi : xs)
                    append_row(out, 2, {m.cx(i) + xi * m.dx, m.cy(j) + eta * m.dy},
                               disc.eval(u, m.index(i, j), xi, eta));
            out += "\n";
        }
    return out;
}

std::string means_csv(const Discretization& disc, const ModalField& u, const std::vector<std::string>& names) {
    std::string out = header(disc.dim(), names);
    for (int cell = 0; cell < disc.ncells(); ++cell) append_row(out, disc.dim(), disc.center(cell), disc.mean(u, cell));
    return out;
}

std::string troubled_csv(const std::vector<TroubledRecord>& log) {
    std::string out = "step,cell,comp\n";
    for (const TroubledRecord& r : log) out += fmt::format("{},{},{}\n", r.step, r.cell, r.comp);
    return out;
}

std::string gnuplot_script(const CaseSpec& cs) {
    std::vector<std::string> names = cs.component_names();
    std::string out = fmt::format("# {}\nset datafile separator ','\nset key autotitle columnhead\n", cs.name);
    if (cs.dim == 1) {
        out += "set terminal pngcairo size 900,600\n";
        for (std::size_t c = 0; c < names.size(); ++c)
            out += fmt::format("set output '{0}.png'\nset title '{1} {0}, t = {2}'\nplot 'solution.csv' using 1:{3} with lines, "
                               "'means.csv' using 1:{3} with points pt 7 ps 0.4\n",
                               names[c], cs.name, cs.t_end, c + 2);
    } else {
        out += "set terminal pngcairo size 800,800\nset view map\nset contour base\nunset surface\nset cntrparam levels 30\n"
               "set size ratio -1\n";
        for (std::size_t c = 0; c < names.size(); ++c)
            out += fmt::format("set output '{0}.png'\nset title '{1} {0}, t = {2}'\nsplot 'solution.csv' using 1:2:{3} with lines "
                               "notitle\n",
                               names[c], cs.name, cs.t_end, c + 3);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) fail(ErrorKind::Config, fmt::format("cannot write '{}'", path.string()));
    f << text;
}

}  // namespace fvsdg
