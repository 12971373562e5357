#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fvsdg/basis.hpp"
#include "fvsdg/dg.hpp"

namespace fvsdg {

enum class LimiterKind { None, ClassicalTVB, ISTVB, ISL2TVB };
enum class IndicatorKind { BuiltInTVB, KXRCF, AlwaysOn };
enum class FreezeAverage { Arithmetic, Roe };

struct LimiterConfig {
    LimiterKind kind = LimiterKind::None;
    double w_is = 1.0;
    double w_l2 = 0.0;
    double tvb_M = 0.0;  // 0 gives the TVD minmod
    IndicatorKind indicator = IndicatorKind::BuiltInTVB;
    bool characteristic = false;
    FreezeAverage freeze = FreezeAverage::Arithmetic;

    // throws Config on inconsistent weights or parameters
    void validate() const;
};

LimiterKind parse_limiter(const std::string& s);
IndicatorKind parse_indicator(const std::string& s);
FreezeAverage parse_freeze(const std::string& s);
std::string limiter_name(LimiterKind k);
std::string indicator_name(IndicatorKind k);

// TVB-modified minmod: v[0] is returned unchanged when |v[0]| <= tvb_M * h^2.
double minmod(const std::vector<double>& v, double tvb_M, double h);
double minmod3(double a, double b, double c, double Mh2);

// Smoothness-indicator matrices. IS(u) = 1/2 a^T M a over the nonconstant modes.
Eigen::MatrixXd assemble_M_IS(const Basis1D& basis, double dx);
Eigen::MatrixXd assemble_M_IS(const Basis2D& basis, double dx, double dy);

// Per-cell constraint geometry shared by every cell of a uniform mesh.
// Rows of G map modal coefficients to constrained values: point traces at
// the two faces in 1D, edge means on L, R, B, T in 2D.
struct CellConstraints {
    int nsides = 2;
    int nmodes = 1;
    double phi0 = 1.0;   // value of the constant mode
    double Mh2 = 0.0;    // TVB threshold tvb_M * h^2
    Eigen::MatrixXd G;   // nsides x nmodes
};

CellConstraints make_constraints(const Discretization& disc, double tvb_M);

// Modified constraint targets from the minmod corrections for one scalar
// polynomial a with neighbor means nb[side]. Returns true if any deviation
// was modified.
bool tvb_targets(const CellConstraints& cc, const double* a, const double* nb, double* target);

struct TvbResult {
    std::vector<std::uint8_t> troubled;  // per cell and component, cell * m + comp
    std::vector<double> target;          // corrected values, (cell * m + comp) * nsides + side
    int nsides = 2;
};

TvbResult indicate_tvb_1d(const DG1D& disc, const ModalField& u, double tvb_M);
TvbResult indicate_tvb_2d(const DG2D& disc, const ModalField& u, double tvb_M);
// per cell and component flags, cell * m + comp
std::vector<std::uint8_t> indicate_kxrcf(const Discretization& disc, const ModalField& u, double t);

// Cell-local optimization limiter with the saddle matrix factored once.
class CellLimiter {
public:
    CellLimiter(const Discretization& disc, const LimiterConfig& cfg);

    const CellConstraints& constraints() const { return cc_; }
    const Eigen::MatrixXd& M_IS() const { return mis_; }
    bool uses_fallback() const { return fallback_; }

    // Replace the nonconstant modes of a so the constraints hit target.
    void limit(const double* a_old, const double* target, double* a_new) const;
    // saddle matrix and right-hand side for a cell (exposed for KKT tests)
    Eigen::MatrixXd saddle_matrix() const;
    Eigen::VectorXd saddle_rhs(const double* a_old, const double* target) const;

private:
    LimiterConfig cfg_;
    CellConstraints cc_;
    Eigen::MatrixXd mis_;
    bool fallback_ = false;  // least squares instead of the saddle system
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
};

// Free form of the cell limiter.
void limit_cell_opt(const Discretization& disc, const LimiterConfig& cfg, const double* a_old,
                    const double* target, double* a_new);

struct LimitReport {
    std::vector<std::uint8_t> troubled;       // per cell
    std::vector<std::uint8_t> troubled_comp;  // per cell and component, cell * m + comp
    int count = 0;
    int freeze_fallbacks = 0;  // inadmissible Roe freezes replaced by arithmetic means
};

// Indicator followed by limiting. Cell means are preserved and untouched
// cells are left bit-identical.
class Limiter {
public:
    Limiter(const Discretization& disc, LimiterConfig cfg);

    const LimiterConfig& config() const { return cfg_; }
    const CellLimiter& cell_limiter() const { return cell_; }
    const Discretization& disc() const { return disc_; }

    LimitReport apply(ModalField& u, double t) const;

private:
    const Discretization& disc_;
    LimiterConfig cfg_;
    CellLimiter cell_;
};

LimitReport apply_limiter(const Discretization& disc, ModalField& u, const LimiterConfig& cfg, double t);

// Neighbor means in side order, each component contiguous: out[comp * nsides + side].
void gather_neighbor_means(const Discretization& disc, const ModalField& u, int cell, double* out);

}  // namespace fvsdg
