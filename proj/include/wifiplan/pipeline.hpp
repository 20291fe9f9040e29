#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wifiplan/aploc.hpp"
#include "wifiplan/freqassign.hpp"

namespace wifiplan {

enum class SolverChoice { Auto, Exact, Local };

SolverChoice parse_solver(std::string_view text);

std::vector<double> default_alphas();

struct PipelineConfig {
  std::vector<double> alphas = default_alphas();
  std::vector<int> freqs{2, 3};
  SolverChoice solver = SolverChoice::Auto;
  /// Auto picks the exact AP location solver up to this many sites.
  int budget_sites = 20;
  std::uint64_t seed = 0;
  int local_iters = 1000;
  FaBudget fa_budget;
};

struct WfapOutcome {
  int num_freqs = 0;
  FrequencyAssignment assignment;
  double objective = 0.0;
  /// "coloring", "exact" or "local".
  std::string method;
  double time_s = 0.0;
};

struct PipelineRow {
  double alpha = 0.0;
  /// Pruned cover; pruning leaves e^PCS unchanged.
  Cover cover;
  double psap_objective = 0.0;
  /// "exact", "exact-budget" (node budget hit, incumbent kept) or "local".
  std::string solver;
  double psap_time_s = 0.0;
  std::vector<WfapOutcome> wfap;
};

struct PipelineReport {
  std::vector<int> freqs;
  std::vector<PipelineRow> rows;  // sorted by α
};

/// Per α: AP location, pruning, then frequency assignment for each |F|.
PipelineReport run_pipeline(const Topology& topo, const PipelineConfig& cfg);

/// alpha,psap_objective,wfap_f<k>...,num_sites,solver. Times live elsewhere
/// so the table is reproducible byte for byte.
std::string report_csv(const PipelineReport& report);
/// alpha,psap_time_s,wfap_f<k>_time_s...
std::string timings_csv(const PipelineReport& report);
/// `freq` lists one frequency per entry of `sites`.
nlohmann::json row_artifact(const PipelineRow& row);

/// Writes `csv_path`, `<stem>_timings.csv` and `<stem>_alpha_<α>.json` next
/// to it. Throws IoError.
void write_pipeline_outputs(const PipelineReport& report, const std::filesystem::path& csv_path);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace wifiplan
