#pragma once

#include <array>

#include "fvsdg/types.hpp"

namespace fvsdg {

class Model;

enum class BoundaryKind { Periodic, Free, Reflective };

struct Mesh1D {
    Mesh1D(double a, double b, int n);

    double a, b;
    int n;
    double dx;

    double center(int i) const { return a + (i + 0.5) * dx; }
    double face(int i) const { return a + i * dx; }  // x_{i-1/2} of cell i; face(n) = b
};

enum Side { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

struct Mesh2D {
    Mesh2D(double ax, double bx, double ay, double by, int nx, int ny);

    double ax, bx, ay, by;
    int nx, ny;
    double dx, dy;

    int cells() const { return nx * ny; }
    int index(int i, int j) const { return i + nx * j; }
    double cx(int i) const { return ax + (i + 0.5) * dx; }
    double cy(int j) const { return ay + (j + 0.5) * dy; }
};

// Outward unit normal of a rectangle side.
Normal side_normal(Side s);

struct Boundaries {
    // left, right, bottom, top; 1D uses left/right only
    std::array<BoundaryKind, 4> kind{BoundaryKind::Periodic, BoundaryKind::Periodic, BoundaryKind::Periodic,
                                     BoundaryKind::Periodic};

    static Boundaries all(BoundaryKind k) { return Boundaries{{k, k, k, k}}; }
    void validate(int dim) const;
};

// Neighbor index across a side, or -1 at a non-periodic boundary.
int neighbor_1d(const Mesh1D& mesh, const Boundaries& bc, int i, Side side);
int neighbor_2d(const Mesh2D& mesh, const Boundaries& bc, int cell, Side side);

// Exterior trace at a non-periodic boundary from the interior trace.
Vec ghost_state(BoundaryKind kind, const Model& model, const Vec& interior, Normal n);

}  // namespace fvsdg
