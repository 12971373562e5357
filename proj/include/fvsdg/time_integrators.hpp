#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fvsdg/dg.hpp"
#include "fvsdg/field.hpp"

namespace fvsdg {

enum class IntegratorKind { TVDRK3, RK4, SSPRK104 };

IntegratorKind parse_integrator(const std::string& s);
std::string integrator_name(IntegratorKind k);
int integrator_order(IntegratorKind k);

using ResidualOp = std::function<void(const ModalField& u, double t, ModalField& out)>;
// Limits u in place and returns the number of troubled cells.
using LimiterOp = std::function<int(ModalField& u, double t)>;

struct StepInfo {
    int troubled = 0;  // troubled cells reported at the first stage
};

// One step from t_n; the limiter acts on every stage input before L_h.
ModalField step(IntegratorKind kind, const ModalField& u, const ResidualOp& L, const LimiterOp& limit, double dt,
                double tn, StepInfo* info = nullptr);

struct IntegrateOptions {
    IntegratorKind kind = IntegratorKind::TVDRK3;
    double cfl = 0.1;
    double t_end = 0.0;
    long max_steps = 50'000'000;
    std::function<void(long step, const ModalField& u)> on_step;
};

struct RunReport {
    long steps = 0;
    std::vector<int> troubled;  // per step
    double wall_seconds = 0.0;
    double t_final = 0.0;
};

// Steps with the CFL time step, clamping the last step onto t_end, and
// limits the final state once more.
ModalField integrate(Discretization& disc, ModalField u, const LimiterOp& limit, const IntegrateOptions& opt,
                     RunReport* report = nullptr);

}  // namespace fvsdg
