#include "fvsdg/dg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fvsdg/error.hpp"
#include "fvsdg/kernels.hpp"
#include "fvsdg/parallel.hpp"

namespace fvsdg {

namespace {

constexpr int kMaxQ = 256;     // volume quadrature points per cell
constexpr int kMaxModes = 128;  // modes per component

void check_trace(const Model& model, const Vec& U, int cell, const char* where) {
    if (!model.admissible(U))
        fail(ErrorKind::Inadmissible,
             fmt::format("{}: inadmissible {} trace in cell {} (U0={})", model.name(), where, cell, U(0)));
}

}  // namespace

// ---------------------------------------------------------------- Discretization

Discretization::Discretization(std::shared_ptr<const Model> model, FluxScheme scheme, Boundaries bc, int K)
    : model_(std::move(model)), scheme_(scheme), bc_(bc), K_(K), vq_(gauss_rule(K + 2)) {
    require(K >= 0, "basis degree must be nonnegative");
    check_compatible(*model_, scheme_);
    bc_.validate(model_->dim());
    if (model_->scalar())
        for (int s = 0; s < 2 * model_->dim(); ++s)
            require(bc_.kind[s] != BoundaryKind::Reflective, "reflective boundaries need a system model");
}

ModalField Discretization::make_field() const { return ModalField(dim(), ncells(), model_->m(), K_); }

Vec Discretization::mean(const ModalField& u, int cell) const {
    Vec out(u.m);
    for (int c = 0; c < u.m; ++c) out(c) = u.mean(cell, c, measure());
    return out;
}

Vec Discretization::neighbor_mean(const ModalField& u, int cell, Side side) const {
    int nb = neighbor(cell, side);
    if (nb >= 0) return mean(u, nb);
    Vec own = mean(u, cell);
    if (bc_.kind[side] == BoundaryKind::Reflective) return model_->reflect(own, side_normal(side));
    return own;
}

Vec Discretization::face_value(const ModalField& u, int cell, Side side) const {
    const std::vector<double>& f = face_functional(side);
    Vec out = Vec::Zero(u.m);
    const double* a = u.cell(cell);
    for (int c = 0; c < u.m; ++c) {
        double s = 0.0;
        for (int k = 0; k < u.nmodes; ++k) s += a[c * u.nmodes + k] * f[k];
        out(c) = s;
    }
    return out;
}

Vec Discretization::exterior_face_value(const ModalField& u, int cell, Side side) const {
    int nb = neighbor(cell, side);
    if (nb >= 0) return face_value(u, nb, static_cast<Side>(side ^ 1));
    return ghost_state(bc_.kind[side], *model_, face_value(u, cell, side), side_normal(side));
}

// ---------------------------------------------------------------- DG1D

DG1D::DG1D(Mesh1D mesh, std::shared_ptr<const Model> model, FluxScheme scheme, Boundaries bc, int K)
    : Discretization(std::move(model), scheme, bc, K), mesh_(mesh), basis_(K) {
    require(model_->dim() == 1, "DG1D needs a one-dimensional model");
    const int nq = vq_.size(), nm = basis_.size();
    const double dx = mesh_.dx;
    V_.resize(nq, nm);
    DW_.resize(nq, nm);
    W_.resize(nq, nm);
    for (int q = 0; q < nq; ++q)
        for (int l = 0; l < nm; ++l) {
            double xi = vq_.points[q], w = vq_.weights[q] * dx;
            V_(q, l) = basis_.eval(l, xi, dx);
            DW_(q, l) = w * basis_.eval(l, xi, dx, 1);
            W_(q, l) = w * V_(q, l);
        }
    phiL_.resize(nm);
    phiR_.resize(nm);
    for (int l = 0; l < nm; ++l) {
        phiL_[l] = basis_.eval(l, -0.5, dx);
        phiR_[l] = basis_.eval(l, 0.5, dx);
    }
}

ModalField DG1D::project(const InitialData& f) const {
    ModalField u = make_field();
    const QuadratureRule pq = gauss_rule(std::min(16, K_ + 3));
    const int nm = basis_.size();
    for (int i = 0; i < mesh_.n; ++i) {
        for (int q = 0; q < pq.size(); ++q) {
            double x = mesh_.center(i) + pq.points[q] * mesh_.dx;
            Vec U = f({x, 0.0});
            require(U.size() == u.m, "initial data has the wrong number of components");
            for (int c = 0; c < u.m; ++c)
                for (int l = 0; l < nm; ++l)
                    u.at(i, c, l) += pq.weights[q] * mesh_.dx * U(c) * basis_.eval(l, pq.points[q], mesh_.dx);
        }
    }
    return u;
}

Vec DG1D::eval(const ModalField& u, int cell, double xi, double) const {
    Vec out = Vec::Zero(u.m);
    for (int l = 0; l < u.nmodes; ++l) {
        double phi = basis_.eval(l, xi, mesh_.dx);
        for (int c = 0; c < u.m; ++c) out(c) += u.at(cell, c, l) * phi;
    }
    return out;
}

Vec DG1D::trace(const ModalField& u, int cell, Side side) const {
    const std::vector<double>& phi = side == kLeft ? phiL_ : phiR_;
    Vec out = Vec::Zero(u.m);
    const double* a = u.cell(cell);
    for (int c = 0; c < u.m; ++c) {
        double s = 0.0;
        for (int l = 0; l < u.nmodes; ++l) s += a[c * u.nmodes + l] * phi[l];
        out(c) = s;
    }
    return out;
}

void DG1D::residual(const ModalField& u, double t, ModalField& out) const {
    if (scheme_.needs_global_bound()) scheme_.global_M = global_bound(u, t);
    const Model& model = *model_;
    const int N = mesh_.n, m = u.m, nm = u.nmodes, nq = vq_.size();
    if (!out.same_shape(u)) out = make_field();
    out.t = t;

    std::vector<Vec> tl(N), tr(N);
    parallel_for(N, [&](int i) {
        tl[i] = trace(u, i, kLeft);
        tr[i] = trace(u, i, kRight);
        check_trace(model, tl[i], i, "left");
        check_trace(model, tr[i], i, "right");
    });

    const bool periodic = bc_.kind[kLeft] == BoundaryKind::Periodic;
    std::vector<Vec> fhat(N + 1);
    parallel_for(N + 1, [&](int f) {
        Vec UL, UR;
        if (f == 0)
            UL = periodic ? tr[N - 1] : ghost_state(bc_.kind[kLeft], model, tl[0], {-1.0, 0.0});
        else
            UL = tr[f - 1];
        if (f == N)
            UR = periodic ? tl[0] : ghost_state(bc_.kind[kRight], model, tr[N - 1], {1.0, 0.0});
        else
            UR = tl[f];
        fhat[f] = interface_flux(model, scheme_, UL, UR, {1.0, 0.0}, {mesh_.face(f), 0.0}, t);
    });

    const bool src = model.has_source();
    parallel_for(N, [&](int i) {
        double Uq[kMaxComp][kMaxQ], Fq[kMaxComp][kMaxQ], Sq[kMaxComp][kMaxQ];
        double tmp[kMaxModes];
        const double* a = u.cell(i);
        double* r = out.cell(i);
        for (int c = 0; c < m; ++c) kernels::matvec(V_.data(), nq, nm, a + c * nm, Uq[c]);
        Vec U(m);
        for (int q = 0; q < nq; ++q) {
            for (int c = 0; c < m; ++c) U(c) = Uq[c][q];
            Point p{mesh_.center(i) + vq_.points[q] * mesh_.dx, 0.0};
            Vec F = model.flux(U, 0, p, t);
            for (int c = 0; c < m; ++c) Fq[c][q] = F(c);
            if (src) {
                Vec S = model.source(U, p, t);
                for (int c = 0; c < m; ++c) Sq[c][q] = S(c);
            }
        }
        for (int c = 0; c < m; ++c) {
            kernels::matvec_t(DW_.data(), nq, nm, Fq[c], r + c * nm);
            if (src) {
                kernels::matvec_t(W_.data(), nq, nm, Sq[c], tmp);
                for (int l = 0; l < nm; ++l) r[c * nm + l] += tmp[l];
            }
            const double fr = fhat[i + 1](c), fl = fhat[i](c);
            for (int l = 0; l < nm; ++l) r[c * nm + l] -= fr * phiR_[l] - fl * phiL_[l];
        }
    });
}

double DG1D::stable_dt(const ModalField& u, double cfl, double t) const {
    require(cfl > 0.0, "cfl must be positive");
    double lam = model_->speed_bound();
    if (lam <= 0.0)
        for (int i = 0; i < mesh_.n; ++i)
            lam = std::max(lam, model_->max_speed(mean(u, i), 0, center(i), t));
    if (lam <= 1e-14) return dt_max > 0.0 ? dt_max : cfl * mesh_.dx;
    return cfl * mesh_.dx / lam;
}

void DG1D::prepare_step(const ModalField& u, double t) {
    if (scheme_.needs_global_bound()) scheme_.global_M = global_bound(u, t);
}

double DG1D::global_bound(const ModalField& u, double t) const {
    double M = 0.0;
    for (int i = 0; i < mesh_.n; ++i)
        for (Side s : {kLeft, kRight}) {
            Point p{s == kLeft ? mesh_.face(i) : mesh_.face(i + 1), 0.0};
            M = std::max(M, model_->max_speed(trace(u, i, s), 0, p, t));
        }
    return M;
}

// ---------------------------------------------------------------- DG2D

DG2D::DG2D(Mesh2D mesh, std::shared_ptr<const Model> model, FluxScheme scheme, Boundaries bc, int K)
    : Discretization(std::move(model), scheme, bc, K), mesh_(mesh), basis_(K), eq_(gauss_rule(K + 2)) {
    require(model_->dim() == 2, "DG2D needs a two-dimensional model");
    const int n1 = vq_.size(), nq = n1 * n1, nm = basis_.size();
    require(nq <= kMaxQ && nm <= kMaxModes, "DG2D: degree too high for the residual workspace");
    const double dx = mesh_.dx, dy = mesh_.dy, area = dx * dy;
    V_.resize(nq, nm);
    DXW_.resize(nq, nm);
    DYW_.resize(nq, nm);
    W_.resize(nq, nm);
    for (int qy = 0; qy < n1; ++qy)
        for (int qx = 0; qx < n1; ++qx) {
            int q = qx + n1 * qy;
            double xi = vq_.points[qx], eta = vq_.points[qy];
            double w = vq_.weights[qx] * vq_.weights[qy] * area;
            for (int k = 0; k < nm; ++k) {
                V_(q, k) = basis_.eval(k, xi, eta, dx, dy);
                DXW_(q, k) = w * basis_.eval(k, xi, eta, dx, dy, 1, 0);
                DYW_(q, k) = w * basis_.eval(k, xi, eta, dx, dy, 0, 1);
                W_(q, k) = w * V_(q, k);
            }
        }
    const int ne = eq_.size();
    for (int s = 0; s < 4; ++s) {
        E_[s].resize(ne, nm);
        EW_[s].resize(ne, nm);
        double len = (s == kLeft || s == kRight) ? dy : dx;
        emean_[s].assign(nm, 0.0);
        for (int g = 0; g < ne; ++g) {
            auto [xi, eta] = edge_point(static_cast<Side>(s), g);
            for (int k = 0; k < nm; ++k) {
                E_[s](g, k) = basis_.eval(k, xi, eta, dx, dy);
                EW_[s](g, k) = eq_.weights[g] * len * E_[s](g, k);
                emean_[s][k] += eq_.weights[g] * E_[s](g, k);
            }
        }
    }
}

Point DG2D::face_center(int cell, Side side) const {
    Point p = center(cell);
    switch (side) {
        case kLeft: p.x -= 0.5 * mesh_.dx; break;
        case kRight: p.x += 0.5 * mesh_.dx; break;
        case kBottom: p.y -= 0.5 * mesh_.dy; break;
        case kTop: p.y += 0.5 * mesh_.dy; break;
    }
    return p;
}

std::array<double, 2> DG2D::edge_point(Side side, int g) const {
    double s = eq_.points[g];
    switch (side) {
        case kLeft: return {-0.5, s};
        case kRight: return {0.5, s};
        case kBottom: return {s, -0.5};
        case kTop: return {s, 0.5};
    }
    return {0.0, 0.0};
}

ModalField DG2D::project(const InitialData& f) const {
    ModalField u = make_field();
    const QuadratureRule pq = gauss_rule(std::min(16, K_ + 3));
    const int nm = basis_.size();
    const double dx = mesh_.dx, dy = mesh_.dy;
    parallel_for(ncells(), [&](int cell) {
        Point c = center(cell);
        for (int qy = 0; qy < pq.size(); ++qy)
            for (int qx = 0; qx < pq.size(); ++qx) {
                Vec U = f({c.x + pq.points[qx] * dx, c.y + pq.points[qy] * dy});
                double w = pq.weights[qx] * pq.weights[qy] * dx * dy;
                for (int k = 0; k < nm; ++k) {
                    double phi = basis_.eval(k, pq.points[qx], pq.points[qy], dx, dy);
                    for (int comp = 0; comp < u.m; ++comp) u.at(cell, comp, k) += w * U(comp) * phi;
                }
            }
    });
    return u;
}

Vec DG2D::eval(const ModalField& u, int cell, double xi, double eta) const {
    Vec out = Vec::Zero(u.m);
    for (int k = 0; k < u.nmodes; ++k) {
        double phi = basis_.eval(k, xi, eta, mesh_.dx, mesh_.dy);
        for (int c = 0; c < u.m; ++c) out(c) += u.at(cell, c, k) * phi;
    }
    return out;
}

Vec DG2D::edge_mean(const ModalField& u, int cell, Side side) const {
    Vec out = Vec::Zero(u.m);
    const Table& E = E_[side];
    for (int g = 0; g < eq_.size(); ++g)
        for (int c = 0; c < u.m; ++c) {
            double v = 0.0;
            for (int k = 0; k < u.nmodes; ++k) v += E(g, k) * u.at(cell, c, k);
            out(c) += eq_.weights[g] * v;
        }
    return out;
}

void DG2D::residual(const ModalField& u, double t, ModalField& out) const {
    if (scheme_.needs_global_bound()) scheme_.global_M = global_bound(u, t);
    const Model& model = *model_;
    const int nx = mesh_.nx, ny = mesh_.ny, ncell = mesh_.cells();
    const int m = u.m, nm = u.nmodes, n1 = vq_.size(), nq = n1 * n1, ne = eq_.size();
    const double dx = mesh_.dx, dy = mesh_.dy;
    if (!out.same_shape(u)) out = make_field();
    out.t = t;

    // traces[cell][side][g][comp]
    const int tstride = 4 * ne * m;
    std::vector<double> tr(static_cast<std::size_t>(ncell) * tstride);
    parallel_for(ncell, [&](int cell) {
        double buf[kMaxQ];
        const double* a = u.cell(cell);
        double* dst = tr.data() + static_cast<std::size_t>(cell) * tstride;
        for (int s = 0; s < 4; ++s)
            for (int c = 0; c < m; ++c) {
                kernels::matvec(E_[s].data(), ne, nm, a + c * nm, buf);
                for (int g = 0; g < ne; ++g) dst[(s * ne + g) * m + c] = buf[g];
            }
        Vec U(m);
        for (int s = 0; s < 4; ++s)
            for (int g = 0; g < ne; ++g) {
                for (int c = 0; c < m; ++c) U(c) = dst[(s * ne + g) * m + c];
                check_trace(model, U, cell, "edge");
            }
    });
    auto trace_at = [&](int cell, int side, int g) {
        Vec U(m);
        const double* src = tr.data() + static_cast<std::size_t>(cell) * tstride + (side * ne + g) * m;
        for (int c = 0; c < m; ++c) U(c) = src[c];
        return U;
    };

    // vertical faces (i = 0..nx, j) carry +x fluxes, horizontal faces (i, j = 0..ny) carry +y fluxes
    const int nvf = (nx + 1) * ny, nhf = nx * (ny + 1);
    std::vector<double> fv(static_cast<std::size_t>(nvf) * ne * m), fh(static_cast<std::size_t>(nhf) * ne * m);
    const bool perx = bc_.kind[kLeft] == BoundaryKind::Periodic;
    const bool pery = bc_.kind[kBottom] == BoundaryKind::Periodic;
    parallel_for(nvf + nhf, [&](int f) {
        const bool vertical = f < nvf;
        const int id = vertical ? f : f - nvf;
        for (int g = 0; g < ne; ++g) {
            Vec UL, UR;
            Point p;
            Normal n;
            if (vertical) {
                int i = id % (nx + 1), j = id / (nx + 1);
                n = {1.0, 0.0};
                p = {mesh_.ax + i * dx, mesh_.cy(j) + eq_.points[g] * dy};
                if (i > 0) UL = trace_at(mesh_.index(i - 1, j), kRight, g);
                if (i < nx) UR = trace_at(mesh_.index(i, j), kLeft, g);
                if (i == 0)
                    UL = perx ? trace_at(mesh_.index(nx - 1, j), kRight, g)
                              : ghost_state(bc_.kind[kLeft], model, UR, {-1.0, 0.0});
                if (i == nx)
                    UR = perx ? trace_at(mesh_.index(0, j), kLeft, g)
                              : ghost_state(bc_.kind[kRight], model, UL, {1.0, 0.0});
            } else {
                int i = id % nx, j = id / nx;
                n = {0.0, 1.0};
                p = {mesh_.cx(i) + eq_.points[g] * dx, mesh_.ay + j * dy};
                if (j > 0) UL = trace_at(mesh_.index(i, j - 1), kTop, g);
                if (j < ny) UR = trace_at(mesh_.index(i, j), kBottom, g);
                if (j == 0)
                    UL = pery ? trace_at(mesh_.index(i, ny - 1), kTop, g)
                              : ghost_state(bc_.kind[kBottom], model, UR, {0.0, -1.0});
                if (j == ny)
                    UR = pery ? trace_at(mesh_.index(i, 0), kBottom, g)
                              : ghost_state(bc_.kind[kTop], model, UL, {0.0, 1.0});
            }
            Vec F = interface_flux(model, scheme_, UL, UR, n, p, t);
            double* dst = (vertical ? fv.data() : fh.data()) + (static_cast<std::size_t>(id) * ne + g) * m;
            for (int c = 0; c < m; ++c) dst[c] = F(c);
        }
    });

    const bool src = model.has_source();
    parallel_for(ncell, [&](int cell) {
        double Uq[kMaxComp][kMaxQ], Fq[kMaxComp][kMaxQ], Gq[kMaxComp][kMaxQ], Sq[kMaxComp][kMaxQ];
        double tmp[kMaxModes], buf[kMaxQ];
        const int i = cell % nx, j = cell / nx;
        const double* a = u.cell(cell);
        double* r = out.cell(cell);
        for (int c = 0; c < m; ++c) kernels::matvec(V_.data(), nq, nm, a + c * nm, Uq[c]);
        Vec U(m);
        const Point cc = center(cell);
        for (int q = 0; q < nq; ++q) {
            for (int c = 0; c < m; ++c) U(c) = Uq[c][q];
            Point p{cc.x + vq_.points[q % n1] * dx, cc.y + vq_.points[q / n1] * dy};
            Vec F = model.flux(U, 0, p, t), G = model.flux(U, 1, p, t);
            for (int c = 0; c < m; ++c) {
                Fq[c][q] = F(c);
                Gq[c][q] = G(c);
            }
            if (src) {
                Vec S = model.source(U, p, t);
                for (int c = 0; c < m; ++c) Sq[c][q] = S(c);
            }
        }
        const double* fl = fv.data() + static_cast<std::size_t>(i + (nx + 1) * j) * ne * m;
        const double* fr = fv.data() + static_cast<std::size_t>(i + 1 + (nx + 1) * j) * ne * m;
        const double* fb = fh.data() + static_cast<std::size_t>(i + nx * j) * ne * m;
        const double* ft = fh.data() + static_cast<std::size_t>(i + nx * (j + 1)) * ne * m;
        for (int c = 0; c < m; ++c) {
            double* rc = r + c * nm;
            kernels::matvec_t(DXW_.data(), nq, nm, Fq[c], rc);
            kernels::matvec_t(DYW_.data(), nq, nm, Gq[c], tmp);
            for (int k = 0; k < nm; ++k) rc[k] += tmp[k];
            if (src) {
                kernels::matvec_t(W_.data(), nq, nm, Sq[c], tmp);
                for (int k = 0; k < nm; ++k) rc[k] += tmp[k];
            }
            // outward normal fluxes: right/top +F, left/bottom -F
            const double* faces[4] = {fl, fr, fb, ft};
            const double sign[4] = {-1.0, 1.0, -1.0, 1.0};
            for (int s = 0; s < 4; ++s) {
                for (int g = 0; g < ne; ++g) buf[g] = sign[s] * faces[s][g * m + c];
                kernels::matvec_t(EW_[s].data(), ne, nm, buf, tmp);
                for (int k = 0; k < nm; ++k) rc[k] -= tmp[k];
            }
        }
    });
}

double DG2D::stable_dt(const ModalField& u, double cfl, double t) const {
    require(cfl > 0.0, "cfl must be positive");
    double rate = 0.0;
    const double bound = model_->speed_bound();
    for (int cell = 0; cell < ncells(); ++cell) {
        double lx, ly;
        if (bound > 0.0) {
            lx = ly = bound;
        } else {
            Vec U = mean(u, cell);
            lx = model_->max_speed(U, 0, center(cell), t);
            ly = model_->max_speed(U, 1, center(cell), t);
        }
        rate = std::max(rate, lx / mesh_.dx + ly / mesh_.dy);
    }
    if (rate <= 1e-14) return dt_max > 0.0 ? dt_max : cfl * min_width();
    return cfl / rate;
}

void DG2D::prepare_step(const ModalField& u, double t) {
    if (scheme_.needs_global_bound()) scheme_.global_M = global_bound(u, t);
}

double DG2D::global_bound(const ModalField& u, double t) const {
    double M = 0.0;
    for (int cell = 0; cell < ncells(); ++cell)
        for (int s = 0; s < 4; ++s)
            for (int g = 0; g < eq_.size(); ++g) {
                auto [xi, eta] = edge_point(static_cast<Side>(s), g);
                Vec U = eval(u, cell, xi, eta);
                Point c = center(cell);
                Point p{c.x + xi * mesh_.dx, c.y + eta * mesh_.dy};
                M = std::max({M, model_->max_speed(U, 0, p, t), model_->max_speed(U, 1, p, t)});
            }
    return M;
}

}  // namespace fvsdg
