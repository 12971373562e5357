#include "fvsdg/mesh.hpp"

#include "fvsdg/error.hpp"
#include "fvsdg/models.hpp"

namespace fvsdg {

Mesh1D::Mesh1D(double a_, double b_, int n_) : a(a_), b(b_), n(n_), dx((b_ - a_) / n_) {
    require(n_ >= 1, "Mesh1D: need at least one cell");
    require(b_ > a_, "Mesh1D: empty domain");
}

Mesh2D::Mesh2D(double ax_, double bx_, double ay_, double by_, int nx_, int ny_)
    : ax(ax_), bx(bx_), ay(ay_), by(by_), nx(nx_), ny(ny_), dx((bx_ - ax_) / nx_), dy((by_ - ay_) / ny_) {
    require(nx_ >= 1 && ny_ >= 1, "Mesh2D: need at least one cell per direction");
    require(bx_ > ax_ && by_ > ay_, "Mesh2D: empty domain");
}

Normal side_normal(Side s) {
    switch (s) {
        case kLeft: return {-1.0, 0.0};
        case kRight: return {1.0, 0.0};
        case kBottom: return {0.0, -1.0};
        case kTop: return {0.0, 1.0};
    }
    return {};
}

void Boundaries::validate(int dim) const {
    auto paired = [&](int s0, int s1) {
        bool p0 = kind[s0] == BoundaryKind::Periodic, p1 = kind[s1] == BoundaryKind::Periodic;
        require(p0 == p1, "periodic boundary requires the opposite side to be periodic");
    };
    paired(kLeft, kRight);
    if (dim == 2) paired(kBottom, kTop);
}

int neighbor_1d(const Mesh1D& mesh, const Boundaries& bc, int i, Side side) {
    int j = side == kLeft ? i - 1 : i + 1;
    if (j >= 0 && j < mesh.n) return j;
    if (bc.kind[side] == BoundaryKind::Periodic) return (j + mesh.n) % mesh.n;
    return -1;
}

int neighbor_2d(const Mesh2D& mesh, const Boundaries& bc, int cell, Side side) {
    int i = cell % mesh.nx, j = cell / mesh.nx;
    switch (side) {
        case kLeft: --i; break;
        case kRight: ++i; break;
        case kBottom: --j; break;
        case kTop: ++j; break;
    }
    bool outside = i < 0 || i >= mesh.nx || j < 0 || j >= mesh.ny;
    if (!outside) return mesh.index(i, j);
    if (bc.kind[side] != BoundaryKind::Periodic) return -1;
    return mesh.index((i + mesh.nx) % mesh.nx, (j + mesh.ny) % mesh.ny);
}

Vec ghost_state(BoundaryKind kind, const Model& model, const Vec& interior, Normal n) {
    switch (kind) {
        case BoundaryKind::Free: return interior;
        case BoundaryKind::Reflective: return model.reflect(interior, n);
        case BoundaryKind::Periodic: break;
    }
    fail(ErrorKind::Config, "ghost_state: periodic traces come from the wrapped cell");
}

}  // namespace fvsdg
