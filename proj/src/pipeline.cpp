#include "wifiplan/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "wifiplan/error.hpp"

namespace wifiplan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PipelineRow locate(const Topology& topo, double alpha, const PipelineConfig& cfg) {
  PipelineRow row;
  row.alpha = alpha;
  const auto t0 = Clock::now();
  const bool exact = cfg.solver == SolverChoice::Exact ||
                     (cfg.solver == SolverChoice::Auto && topo.num_css() <= cfg.budget_sites);
  PsapResult res;
  if (exact) {
    ExactBudget budget;
    budget.max_sites = std::max(cfg.budget_sites, cfg.solver == SolverChoice::Exact ? topo.num_css() : 0);
    try {
      res = solve_exact(topo, Alpha(alpha), budget);
      row.solver = "exact";
    } catch (const BudgetExceededWith<PsapResult>& e) {
      res = e.incumbent();
      row.solver = "exact-budget";
    }
  } else {
    res = solve_local_search(topo, Alpha(alpha), cfg.seed, cfg.local_iters);
    row.solver = "local";
  }
  row.psap_time_s = seconds_since(t0);
  row.psap_objective = res.objective;
  row.cover = prune_unused_aps(topo, res.cover);
  return row;
}

WfapOutcome assign(const Topology& topo, const Cover& cover, int num_freqs, const FaBudget& budget) {
  WfapOutcome out;
  out.num_freqs = num_freqs;
  const auto t0 = Clock::now();
  FaResult fa;
  try {
    const auto colors = greedy_coloring(build_overlap_graph(topo, cover), num_freqs);
    const bool complete = std::find(colors.begin(), colors.end(), kUncolored) == colors.end();
    fa = reduce_then_solve(topo, cover, num_freqs, budget);
    out.method = complete ? "coloring" : "exact";
  } catch (const BudgetExceeded&) {
    fa = solve_local_fa(topo, cover, num_freqs);
    out.method = "local";
  }
  out.time_s = seconds_since(t0);
  out.assignment = fa.assignment;
  out.objective = fa.value.total;
  return out;
}

std::string alpha_tag(double alpha) {
  std::string s = format_number(alpha);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

SolverChoice parse_solver(std::string_view text) {
  if (text == "auto") return SolverChoice::Auto;
  if (text == "exact") return SolverChoice::Exact;
  if (text == "local") return SolverChoice::Local;
  throw InvalidConfig("unknown solver '" + std::string(text) + "'");
}

std::vector<double> default_alphas() { return {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}; }

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

PipelineReport run_pipeline(const Topology& topo, const PipelineConfig& cfg) {
  if (cfg.alphas.empty()) throw InvalidConfig("no α values given");
  for (int k : cfg.freqs) {
    if (k < 1) throw InvalidConfig("frequency counts must be positive");
  }
  PipelineReport report;
  report.freqs = cfg.freqs;
  std::vector<double> alphas = cfg.alphas;
  std::sort(alphas.begin(), alphas.end());
  for (double alpha : alphas) {
    PipelineRow row = locate(topo, alpha, cfg);
    for (int k : cfg.freqs) row.wfap.push_back(assign(topo, row.cover, k, cfg.fa_budget));
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string report_csv(const PipelineReport& report) {
  std::ostringstream out;
  out << "alpha,psap_objective";
  for (int k : report.freqs) out << ",wfap_f" << k;
  out << ",num_sites,solver\n";
  for (const PipelineRow& r : report.rows) {
    out << format_number(r.alpha) << ',' << format_number(r.psap_objective);
    for (const WfapOutcome& w : r.wfap) out << ',' << format_number(w.objective);
    out << ',' << r.cover.size() << ',' << r.solver << '\n';
  }
  return out.str();
}

std::string timings_csv(const PipelineReport& report) {
  std::ostringstream out;
  out << "alpha,psap_time_s";
  for (int k : report.freqs) out << ",wfap_f" << k << "_time_s";
  out << '\n';
  for (const PipelineRow& r : report.rows) {
    out << format_number(r.alpha) << ',' << format_number(r.psap_time_s);
    for (const WfapOutcome& w : r.wfap) out << ',' << format_number(w.time_s);
    out << '\n';
  }
  return out.str();
}

nlohmann::json row_artifact(const PipelineRow& row) {
  nlohmann::json wfap = nlohmann::json::array();
  for (const WfapOutcome& w : row.wfap) {
    nlohmann::json freq = nlohmann::json::array();
    for (int j : row.cover.sites()) freq.push_back(w.assignment[j]);
    wfap.push_back({{"num_freqs", w.num_freqs},
                    {"freq", freq},
                    {"objective", w.objective},
                    {"method", w.method},
                    {"time_s", w.time_s}});
  }
  return {{"alpha", row.alpha},
          {"sites", row.cover.sites()},
          {"psap_objective", row.psap_objective},
          {"solver", row.solver},
          {"psap_time_s", row.psap_time_s},
          {"wfap", wfap}};
}

void write_pipeline_outputs(const PipelineReport& report, const std::filesystem::path& csv_path) {
  const auto dir = csv_path.parent_path();
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  }
  write_file(csv_path, report_csv(report));
  const std::string stem = csv_path.stem().string();
  write_file(dir / (stem + "_timings.csv"), timings_csv(report));
  for (const PipelineRow& r : report.rows) {
    write_file(dir / (stem + "_alpha_" + alpha_tag(r.alpha) + ".json"), row_artifact(r).dump(1) + "\n");
  }
}

}  // namespace wifiplan
