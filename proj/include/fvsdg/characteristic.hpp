#pragma once

#include <Eigen/Dense>

#include "fvsdg/dg.hpp"
#include "fvsdg/limiters.hpp"

namespace fvsdg {

// Averaged interface state generating the frozen characteristic frame.
struct FreezeState {
    Vec state;
    FreezeAverage kind = FreezeAverage::Arithmetic;
    bool fallback = false;  // Roe or trace average inadmissible, cell means used
};

struct CharTransform {
    Mat L;
    Mat R;
};

// Freeze at the face of `cell` on `side` from the two face values.
FreezeState interface_freeze(const Discretization& disc, const ModalField& u, int cell, Side side, FreezeAverage kind);
CharTransform char_transform(const Model& model, const Vec& state, Normal n);

// B = L A for a modal matrix A (components x modes); inverse is R B.
Eigen::MatrixXd moment_transform(const Eigen::MatrixXd& A, const Mat& L);
// Sample at the points behind P (rows points, cols modes), rotate by L and
// solve P b = L Y per component. P must be square and nonsingular.
Eigen::MatrixXd interp_transform(const Eigen::MatrixXd& A, const Mat& L, const Eigen::MatrixXd& P);
// Default unisolvent sample set of a cell: Gauss nodes in 1D, the principal
// lattice of total degree K in 2D. Returns the basis values matrix.
Eigen::MatrixXd sample_matrix(const Discretization& disc);

// Limit one cell in the characteristic frames of its faces and average the
// per-face candidates with equal weights. With limit_all false only the
// characteristic components whose minmod corrections change are limited.
// Writes the cell block to out and returns true if the cell was modified.
bool limit_in_characteristic(const Discretization& disc, const ModalField& u, int cell, const CellLimiter& lim,
                             const LimiterConfig& cfg, bool limit_all, double* out, int* freeze_fallbacks = nullptr);

}  // namespace fvsdg
