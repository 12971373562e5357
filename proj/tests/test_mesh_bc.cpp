#include <doctest.h>

#include "fvsdg/dg.hpp"
#include "fvsdg/error.hpp"
#include "fvsdg/mesh.hpp"
#include "fvsdg/models.hpp"

using namespace fvsdg;

TEST_SUITE("mesh_bc") {

TEST_CASE("mesh 1D geometry") {
    Mesh1D m(-1.0, 1.0, 8);
    CHECK(m.dx == doctest::Approx(0.25));
    CHECK(m.face(0) == -1.0);
    CHECK(m.face(8) == doctest::Approx(1.0));
    for (int i = 0; i < 8; ++i) CHECK(m.face(i + 1) > m.face(i));
    CHECK(m.center(3) == doctest::Approx(-0.125));
    CHECK_THROWS_AS(Mesh1D(1.0, 0.0, 4), Error);
    CHECK_THROWS_AS(Mesh1D(0.0, 1.0, 0), Error);
}

TEST_CASE("ghost state: free copies the trace") {
    Euler e(1);
    Vec U(3);
    U << 1.0, 0.5, 2.0;
    CHECK(ghost_state(BoundaryKind::Free, e, U, side_normal(kLeft)) == U);
}

TEST_CASE("ghost state: reflective flips the normal momentum") {
    Euler e(1);
    Vec U(3);
    U << 1.0, 0.5, 2.0;
    Vec G = ghost_state(BoundaryKind::Reflective, e, U, side_normal(kLeft));
    CHECK(G(0) == 1.0);
    CHECK(G(1) == -0.5);
    CHECK(G(2) == 2.0);

    Euler e2(2);
    Vec V(4);
    V << 1.0, 0.3, -0.7, 3.0;
    Vec Gx = ghost_state(BoundaryKind::Reflective, e2, V, side_normal(kRight));
    CHECK(Gx(1) == -0.3);
    CHECK(Gx(2) == -0.7);
    Vec Gy = ghost_state(BoundaryKind::Reflective, e2, V, side_normal(kTop));
    CHECK(Gy(1) == 0.3);
    CHECK(Gy(2) == 0.7);

    ShallowWater s(1);
    Vec H(2);
    H << 2.0, 1.5;
    CHECK(ghost_state(BoundaryKind::Reflective, s, H, side_normal(kRight))(1) == -1.5);
}

TEST_CASE("ghost state: reflective rejected for scalar equations") {
    Burgers b(1);
    Vec u(1);
    u << 0.3;
    CHECK_THROWS_AS(ghost_state(BoundaryKind::Reflective, b, u, side_normal(kLeft)), Error);
}

TEST_CASE("periodic neighbors wrap") {
    Mesh1D m(0.0, 1.0, 4);
    Boundaries bc = Boundaries::all(BoundaryKind::Periodic);
    CHECK(neighbor_1d(m, bc, 3, kRight) == 0);
    CHECK(neighbor_1d(m, bc, 0, kLeft) == 3);
    Boundaries free = Boundaries::all(BoundaryKind::Free);
    CHECK(neighbor_1d(m, free, 3, kRight) == -1);
    CHECK(neighbor_1d(m, free, 1, kRight) == 2);
}

TEST_CASE("periodic 1D: exterior trace at the right end is cell 0's left trace") {
    auto b = std::make_shared<Burgers>(1);
    DG1D d(Mesh1D(0.0, 1.0, 4), b, {FluxKind::ScalarSW}, Boundaries{}, 2);
    ModalField u = d.project([](const Point& p) { Vec v(1); v << p.x * p.x; return v; });
    CHECK(d.exterior_face_value(u, 3, kRight)(0) == doctest::Approx(d.trace(u, 0, kLeft)(0)));
    CHECK(std::abs(d.trace(u, 0, kLeft)(0)) < 1e-13);
}

TEST_CASE("mesh 2D: interior edges are shared with opposite normals") {
    Mesh2D m(0.0, 1.0, 0.0, 2.0, 5, 4);
    Boundaries bc = Boundaries::all(BoundaryKind::Periodic);
    for (int c = 0; c < m.cells(); ++c)
        for (int s = 0; s < 4; ++s) {
            int nb = neighbor_2d(m, bc, c, static_cast<Side>(s));
            REQUIRE(nb >= 0);
            CHECK(neighbor_2d(m, bc, nb, static_cast<Side>(s ^ 1)) == c);
            Normal n = side_normal(static_cast<Side>(s)), o = side_normal(static_cast<Side>(s ^ 1));
            CHECK(n.nx == -o.nx);
            CHECK(n.ny == -o.ny);
            CHECK(n.nx * n.nx + n.ny * n.ny == 1.0);
        }
}

TEST_CASE("boundaries: periodic must pair with periodic") {
    Boundaries bc{{BoundaryKind::Periodic, BoundaryKind::Free, BoundaryKind::Free, BoundaryKind::Free}};
    CHECK_THROWS_AS(bc.validate(1), Error);
    Boundaries ok{{BoundaryKind::Free, BoundaryKind::Reflective, BoundaryKind::Periodic, BoundaryKind::Periodic}};
    CHECK_NOTHROW(ok.validate(2));
}

}  // TEST_SUITE
