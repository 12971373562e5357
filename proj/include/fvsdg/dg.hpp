#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fvsdg/basis.hpp"
#include "fvsdg/field.hpp"
#include "fvsdg/fluxes.hpp"
#include "fvsdg/mesh.hpp"
#include "fvsdg/models.hpp"
#include "fvsdg/quadrature.hpp"

namespace fvsdg {

using InitialData = std::function<Vec(const Point&)>;

// Column-major table: rows are quadrature points, columns are modes.
struct Table {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    double& operator()(int r, int c) { return v[static_cast<std::size_t>(c) * rows + r]; }
    double operator()(int r, int c) const { return v[static_cast<std::size_t>(c) * rows + r]; }
    const double* data() const { return v.data(); }
    void resize(int r, int c) {
        rows = r;
        cols = c;
        v.assign(static_cast<std::size_t>(r) * c, 0.0);
    }
};

// Semi-discrete DG operator on a uniform mesh.
class Discretization {
public:
    Discretization(std::shared_ptr<const Model> model, FluxScheme scheme, Boundaries bc, int K);
    virtual ~Discretization() = default;

    virtual int dim() const = 0;
    virtual int ncells() const = 0;
    virtual double measure() const = 0;  // |cell|
    virtual double min_width() const = 0;

    ModalField make_field() const;
    virtual ModalField project(const InitialData& f) const = 0;
    virtual void residual(const ModalField& u, double t, ModalField& out) const = 0;
    virtual double stable_dt(const ModalField& u, double cfl, double t) const = 0;
    // refresh per-step scheme data (global Lax-Friedrichs bound)
    virtual void prepare_step(const ModalField& u, double t) = 0;
    // max wave speed over all face traces of u
    virtual double global_bound(const ModalField& u, double t) const = 0;

    // point value at reference coordinates of a cell
    virtual Vec eval(const ModalField& u, int cell, double xi, double eta = 0.0) const = 0;
    virtual Point center(int cell) const = 0;
    Vec mean(const ModalField& u, int cell) const;
    // neighbor cell mean across a side; boundaries copy or mirror the own mean
    Vec neighbor_mean(const ModalField& u, int cell, Side side) const;
    virtual int neighbor(int cell, Side side) const = 0;
    int sides() const { return dim() == 1 ? 2 : 4; }
    virtual double width(int axis) const = 0;
    // midpoint of a cell side
    virtual Point face_center(int cell, Side side) const = 0;
    // per-mode weights giving the face value: trace in 1D, edge mean in 2D
    virtual const std::vector<double>& face_functional(Side side) const = 0;
    Vec face_value(const ModalField& u, int cell, Side side) const;
    // neighbor's value on the shared face, or the ghost value at a boundary
    Vec exterior_face_value(const ModalField& u, int cell, Side side) const;
    // basis values at the volume quadrature points: rows points, cols modes
    virtual const Table& volume_values() const = 0;

    const Model& model() const { return *model_; }
    std::shared_ptr<const Model> model_ptr() const { return model_; }
    const FluxScheme& scheme() const { return scheme_; }
    const Boundaries& bc() const { return bc_; }
    int K() const { return K_; }
    const QuadratureRule& volume_rule() const { return vq_; }

    double dt_max = 0.0;  // fallback when every wave speed vanishes; 0 means cfl * min width

protected:
    std::shared_ptr<const Model> model_;
    mutable FluxScheme scheme_;  // global LF bound follows the state passed to residual
    Boundaries bc_;
    int K_;
    QuadratureRule vq_;
};

class DG1D final : public Discretization {
public:
    DG1D(Mesh1D mesh, std::shared_ptr<const Model> model, FluxScheme scheme, Boundaries bc, int K);

    int dim() const override { return 1; }
    int ncells() const override { return mesh_.n; }
    double measure() const override { return mesh_.dx; }
    double min_width() const override { return mesh_.dx; }
    const Mesh1D& mesh() const { return mesh_; }
    const Basis1D& basis() const { return basis_; }

    ModalField project(const InitialData& f) const override;
    void residual(const ModalField& u, double t, ModalField& out) const override;
    double stable_dt(const ModalField& u, double cfl, double t) const override;
    void prepare_step(const ModalField& u, double t) override;
    double global_bound(const ModalField& u, double t) const override;
    Vec eval(const ModalField& u, int cell, double xi, double eta = 0.0) const override;
    Point center(int cell) const override { return {mesh_.center(cell), 0.0}; }
    int neighbor(int cell, Side side) const override { return neighbor_1d(mesh_, bc_, cell, side); }
    double width(int) const override { return mesh_.dx; }
    Point face_center(int cell, Side side) const override {
        return {side == kLeft ? mesh_.face(cell) : mesh_.face(cell + 1), 0.0};
    }
    const std::vector<double>& face_functional(Side side) const override { return side == kLeft ? phiL_ : phiR_; }
    const Table& volume_values() const override { return V_; }

    // traces at x^+_{i-1/2} (side kLeft) and x^-_{i+1/2} (side kRight)
    Vec trace(const ModalField& u, int cell, Side side) const;

private:
    Mesh1D mesh_;
    Basis1D basis_;
    Table V_, DW_, W_;
    std::vector<double> phiL_, phiR_;
};

class DG2D final : public Discretization {
public:
    DG2D(Mesh2D mesh, std::shared_ptr<const Model> model, FluxScheme scheme, Boundaries bc, int K);

    int dim() const override { return 2; }
    int ncells() const override { return mesh_.cells(); }
    double measure() const override { return mesh_.dx * mesh_.dy; }
    double min_width() const override { return std::min(mesh_.dx, mesh_.dy); }
    const Mesh2D& mesh() const { return mesh_; }
    const Basis2D& basis() const { return basis_; }
    const QuadratureRule& edge_rule() const { return eq_; }

    ModalField project(const InitialData& f) const override;
    void residual(const ModalField& u, double t, ModalField& out) const override;
    double stable_dt(const ModalField& u, double cfl, double t) const override;
    void prepare_step(const ModalField& u, double t) override;
    double global_bound(const ModalField& u, double t) const override;
    Vec eval(const ModalField& u, int cell, double xi, double eta) const override;
    Point center(int cell) const override {
        return {mesh_.cx(cell % mesh_.nx), mesh_.cy(cell / mesh_.nx)};
    }
    int neighbor(int cell, Side side) const override { return neighbor_2d(mesh_, bc_, cell, side); }
    double width(int axis) const override { return axis == 0 ? mesh_.dx : mesh_.dy; }
    Point face_center(int cell, Side side) const override;
    const std::vector<double>& face_functional(Side side) const override { return emean_[side]; }
    const Table& volume_values() const override { return V_; }

    // reference coordinates of edge quadrature point g on a side
    std::array<double, 2> edge_point(Side side, int g) const;
    // edge values of all modes: rows edge points, cols modes
    const Table& edge_table(Side side) const { return E_[side]; }
    // integral mean of the trace over an edge
    Vec edge_mean(const ModalField& u, int cell, Side side) const;

private:
    Mesh2D mesh_;
    Basis2D basis_;
    QuadratureRule eq_;
    Table V_, DXW_, DYW_, W_;
    std::array<Table, 4> E_, EW_;
    std::array<std::vector<double>, 4> emean_;
};

}  // namespace fvsdg
