#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fvsdg/dg.hpp"
#include "fvsdg/fluxes.hpp"
#include "fvsdg/limiters.hpp"
#include "fvsdg/mesh.hpp"
#include "fvsdg/models.hpp"
#include "fvsdg/time_integrators.hpp"

namespace fvsdg {

using ExactSolution = std::function<Vec(const Point&, double)>;

// A complete experiment definition: equation, domain, data and scheme.
struct CaseSpec {
    std::string name;
    std::string description;
    int dim = 1;
    std::shared_ptr<const Model> model;
    double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
    Boundaries bc;
    double t_end = 0.0;
    int K = 2;
    int N = 10;  // cells per direction
    FluxScheme flux;
    IntegratorKind integrator = IntegratorKind::TVDRK3;
    double cfl = 0.1;
    LimiterConfig limiter;
    InitialData init;
    ExactSolution exact;            // empty when no closed form exists
    std::vector<int> study_meshes;  // mesh sequence of the accuracy study
    int reference_N = 0;            // fine reference mesh when exact is empty
    bool full_scale = true;         // false for reduced desk-scale variants
    bool averaged_norms = false;    // tables report L1/|domain| and L2/|domain|^(1/2)

    std::vector<std::string> component_names() const;
    double domain_measure() const { return dim == 1 ? bx - ax : (bx - ax) * (by - ay); }
};

const std::vector<std::string>& case_names();
CaseSpec make_case(const std::string& name);

std::unique_ptr<Discretization> make_discretization(const CaseSpec& cs);

}  // namespace fvsdg
