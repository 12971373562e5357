#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fvsdg/cases.hpp"
#include "fvsdg/harness.hpp"

namespace fvsdg {

using ConfigMap = std::map<std::string, std::string>;

// Line-based `key = value` file; '#' starts a comment, blank lines are skipped.
ConfigMap parse_config(const std::string& text);
ConfigMap load_config(const std::filesystem::path& path);

// Applies scheme overrides to a case: K, N, cfl, t_end, flux, delta, alpha,
// integrator, limiter, wis, wl2, tvb_M, indicator, characteristic, freeze.
// Unknown keys are left for the caller; returns the keys consumed.
std::vector<std::string> apply_overrides(CaseSpec& cs, const ConfigMap& cfg);

// One row per output point: the cell center and the (K+2)-point Gauss nodes,
// ordered within each cell; columns x[,y],comp...
std::string solution_csv(const Discretization& disc, const ModalField& u, const std::vector<std::string>& names);
// One row per cell: center and cell mean.
std::string means_csv(const Discretization& disc, const ModalField& u, const std::vector<std::string>& names);
std::string troubled_csv(const std::vector<TroubledRecord>& log);
// gnuplot script plotting every component of solution.csv.
std::string gnuplot_script(const CaseSpec& cs);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fvsdg
