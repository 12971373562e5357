#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fvsdg/cases.hpp"
#include "fvsdg/limiters.hpp"
#include "fvsdg/time_integrators.hpp"

namespace fvsdg {

// Per-component error norms of one run.
struct ErrorNorms {
    std::vector<double> L1, L2, Linf;
};

enum class Norm { L1, L2, Linf };
const char* norm_name(Norm n);
double norm_value(const ErrorNorms& e, Norm n, int comp);

// Norms of u_h - exact by (K+2)-point Gauss quadrature per cell; L-infinity
// is the maximum over the quadrature points.
ErrorNorms error_norms(const Discretization& disc, const ModalField& u, const ExactSolution& exact, double t);
// L1 / |domain| and L2 / |domain|^(1/2); L-infinity unchanged. Tables of
// errors are usually printed in this domain-averaged form.
ErrorNorms normalize(const ErrorNorms& e, double domain_measure);
// Norms of u_h - u_ref where u_ref lives on a nested finer mesh.
ErrorNorms error_norms_vs(const Discretization& disc, const ModalField& u, const Discretization& ref_disc,
                          const ModalField& ref);

struct TroubledRecord {
    long step;
    int cell;
    int comp;
};

struct RunResult {
    std::unique_ptr<Discretization> disc;
    ModalField u;
    RunReport report;
    std::optional<ErrorNorms> errors;
    std::vector<TroubledRecord> troubled;  // first-stage troubled cells of every step
    int freeze_fallbacks = 0;
    bool diverged = false;
    std::string message;
};

struct RunOptions {
    bool log_troubled = false;
    bool compute_errors = true;
};

// Project, integrate and (when an exact solution exists) measure errors.
// Divergence is caught and reported with the last finite state.
RunResult run_case(const CaseSpec& cs, const RunOptions& opt = {});

struct StudyRow {
    int N = 0;
    ErrorNorms err;
};

struct ConvergenceStudy {
    std::string case_name;
    std::vector<std::string> components;
    std::vector<StudyRow> rows;
    bool normalized = false;  // rows hold domain-averaged norms

    // log2(e_coarse / e_fine) between rows i-1 and i
    double order(Norm n, int comp, int i) const;
};

// Runs the case on each mesh of the sequence. Without an exact solution the
// errors are measured against a run on reference_N cells.
// Rows hold domain-averaged norms when cs.averaged_norms is set.
ConvergenceStudy convergence_study(const CaseSpec& cs, const std::vector<int>& meshes, int reference_N = 0);

// Aligned text table: errors and orders per component and norm.
std::string format_study(const ConvergenceStudy& s);
// CSV: N, then comp_norm error and order columns.
std::string study_csv(const ConvergenceStudy& s);

}  // namespace fvsdg
