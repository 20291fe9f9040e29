// wifiplan: instance generation, evaluation, LP emission and the α sweep.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wifiplan/aploc.hpp"
#include "wifiplan/efficiency.hpp"
#include "wifiplan/error.hpp"
#include "wifiplan/freqassign.hpp"
#include "wifiplan/milp.hpp"
#include "wifiplan/pipeline.hpp"

namespace wp = wifiplan;

namespace {

struct InstanceSource {
  std::string path;
  std::uint64_t seed = 1;
  int tps = 12;
  int css = 8;
  std::string propagation = "anisotropic";
  double radius_min = 0.25;
  double radius_max = 0.45;
  double side = 1.0;

  void attach(CLI::App& cmd) {
    cmd.add_option("--instance", path, "Instance JSON file; generated from the flags below if absent");
    cmd.add_option("--seed", seed, "Generator seed");
    cmd.add_option("--tps", tps, "Number of test points")->check(CLI::PositiveNumber);
    cmd.add_option("--css", css, "Number of candidate sites")->check(CLI::PositiveNumber);
    cmd.add_option("--propagation", propagation, "isotropic or anisotropic")
        ->check(CLI::IsMember({"isotropic", "anisotropic"}));
    cmd.add_option("--radius-min", radius_min, "Smallest sector radius (isotropic: ignored)");
    cmd.add_option("--radius-max", radius_max, "Largest sector radius (isotropic: the radius)");
    cmd.add_option("--side", side, "Side of the square service area");
  }

  wp::GeneratorConfig config(int num_freqs) const {
    wp::GeneratorConfig cfg;
    cfg.num_tps = tps;
    cfg.num_css = css;
    cfg.num_frequencies = num_freqs;
    cfg.area_side = side;
    cfg.rng_seed = seed;
    if (propagation == "isotropic") {
      cfg.propagation = wp::IsotropicPropagation{radius_max};
    } else {
      cfg.propagation = wp::AnisotropicPropagation{16, radius_min, radius_max};
    }
    return cfg;
  }

  wp::Instance get(int num_freqs) const {
    return path.empty() ? wp::generate(config(num_freqs)) : wp::load(path);
  }
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw wp::InvalidConfig("bad integer '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw wp::InvalidConfig("bad number '" + item + "'");
    }
  }
  return out;
}

wp::FrequencyAssignment parse_freq_map(const std::string& text, int num_css) {
  wp::FrequencyAssignment f{std::vector<int>(static_cast<std::size_t>(num_css), -1)};
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw wp::InvalidConfig("freq-map entry '" + item + "' lacks ':'");
    const auto site = parse_int_list(item.substr(0, colon));
    const auto freq = parse_int_list(item.substr(colon + 1));
    if (site.size() != 1 || freq.size() != 1) throw wp::InvalidConfig("bad freq-map entry '" + item + "'");
    if (site[0] < 0 || site[0] >= num_css) throw wp::InvalidConfig("site " + item + " out of range");
    f.freq[static_cast<std::size_t>(site[0])] = freq[0];
  }
  return f;
}

wp::Cover parse_sites(const std::string& text, int num_css) {
  auto sites = parse_int_list(text);
  for (int j : sites) {
    if (j < 0 || j >= num_css) throw wp::InvalidConfig("site " + std::to_string(j) + " out of range");
  }
  return wp::Cover(std::move(sites));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wp::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw wp::IoError("write to '" + path + "' failed");
}

wp::PsapResult locate(const wp::Topology& topo, double alpha, wp::SolverChoice solver,
                      int budget_sites, std::uint64_t seed) {
  const bool exact = solver == wp::SolverChoice::Exact ||
                     (solver == wp::SolverChoice::Auto && topo.num_css() <= budget_sites);
  if (!exact) return wp::solve_local_search(topo, wp::Alpha(alpha), seed, 1000);
  wp::ExactBudget budget;
  budget.max_sites = std::max(budget_sites, topo.num_css());
  try {
    return wp::solve_exact(topo, wp::Alpha(alpha), budget);
  } catch (const wp::BudgetExceededWith<wp::PsapResult>& e) {
    std::cerr << "warning: " << e.what() << "; keeping the incumbent\n";
    return e.incumbent();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless LAN access point location and frequency assignment"};
  app.require_subcommand(1);

  InstanceSource src;
  std::string out_path;
  std::string freqs_text = "2,3";
  std::string alphas_text;
  std::string sites_text;
  std::string freq_map_text;
  std::string formulation_text = "psap-l";
  std::string solver_text = "auto";
  std::optional<double> alpha;
  int budget_sites = 20;
  std::uint64_t scenario_cap = wp::kDefaultScenarioCap;

  auto* gen = app.add_subcommand("generate", "Draw a random instance");
  src.attach(*gen);
  int gen_freqs = 3;
  gen->add_option("--freqs", gen_freqs, "Number of available frequencies")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "Output file (default: stdout)");

  auto* eval = app.add_subcommand("evaluate", "Evaluate a design");
  src.attach(*eval);
  eval->add_option("--sites", sites_text, "Installed sites, e.g. 0,1")->required();
  eval->add_option("--freq-map", freq_map_text, "Frequencies per site, e.g. 0:0,1:1");
  eval->add_option("--alpha", alpha, "Print e^PCS at this α instead");

  auto* emit = app.add_subcommand("emit", "Write a 0-1 model in LP format");
  src.attach(*emit);
  emit->add_option("--formulation", formulation_text, "lin-a, lin-b, psap-l, wfap-h, wfap-h2 or wfap-l")
      ->check(CLI::IsMember({"lin-a", "lin-b", "psap-l", "wfap-h", "wfap-h2", "wfap-l"}));
  emit->add_option("--alpha", alpha, "α for AP location models (default 0.5)");
  emit->add_option("--freqs", freqs_text, "Number of frequencies for assignment models");
  emit->add_option("--sites", sites_text, "Cover for assignment models (default: solve AP location at --alpha)");
  emit->add_option("--scenario-cap", scenario_cap, "Scenario limit per (TP, site)");
  emit->add_option("--out", out_path, "Output LP file (default: stdout)");

  auto* solve = app.add_subcommand("solve", "Solve AP location, then frequency assignment");
  src.attach(*solve);
  solve->add_option("--alpha", alpha, "Separation parameter (default 0.5)");
  solve->add_option("--freqs", freqs_text, "Frequency counts, e.g. 2,3");
  solve->add_option("--solver", solver_text, "auto, exact or local")
      ->check(CLI::IsMember({"auto", "exact", "local"}));
  solve->add_option("--budget-sites", budget_sites, "Largest instance solved exactly under auto");
  solve->add_option("--out", out_path, "Output JSON (default: stdout)");

  auto* pipe = app.add_subcommand("pipeline", "α sweep: AP location then frequency assignment");
  src.attach(*pipe);
  pipe->add_option("--alphas", alphas_text, "α grid (default 0,0.2,0.4,0.6,0.8,1)");
  pipe->add_option("--freqs", freqs_text, "Frequency counts, e.g. 2,3");
  pipe->add_option("--solver", solver_text, "auto, exact or local")
      ->check(CLI::IsMember({"auto", "exact", "local"}));
  pipe->add_option("--budget-sites", budget_sites, "Largest instance solved exactly under auto");
  pipe->add_option("--out", out_path, "CSV report; artifacts are written next to it (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      write_text(out_path, wp::dump_instance(src.get(gen_freqs)));
      return 0;
    }

    const auto freqs = parse_int_list(freqs_text);
    const wp::Topology topo(src.get(freqs.empty() ? 3 : *std::max_element(freqs.begin(), freqs.end())));

    if (*eval) {
      const wp::Cover cover = parse_sites(sites_text, topo.num_css());
      double value = 0.0;
      if (!freq_map_text.empty()) {
        value = wp::eval_design(topo, cover, parse_freq_map(freq_map_text, topo.num_css())).total;
      } else if (alpha) {
        value = wp::eval_pcs(topo, cover, wp::Alpha(*alpha)).total;
      } else {
        throw wp::InvalidConfig("evaluate needs --freq-map or --alpha");
      }
      std::cout << wp::format_number(value) << '\n';
      return 0;
    }

    if (*emit) {
      const wp::Formulation f = wp::parse_formulation(formulation_text);
      const double a = alpha.value_or(0.5);
      wp::MilpModel model;
      if (wp::is_psap(f)) {
        if (f == wp::Formulation::LinA) model = wp::build_psap_lin(topo, wp::Alpha(a), wp::LinVariant::LinA);
        if (f == wp::Formulation::LinB) model = wp::build_psap_lin(topo, wp::Alpha(a), wp::LinVariant::LinB);
        if (f == wp::Formulation::PsapL) model = wp::build_psap_enum(topo, wp::Alpha(a), scenario_cap);
      } else {
        if (freqs.size() != 1) throw wp::InvalidConfig("assignment models take a single --freqs value");
        const wp::Cover cover = sites_text.empty()
                                    ? locate(topo, a, wp::SolverChoice::Auto, budget_sites, src.seed).cover
                                    : parse_sites(sites_text, topo.num_css());
        const wp::Cover pruned = wp::prune_unused_aps(topo, cover);
        if (f == wp::Formulation::WfapH) model = wp::build_wfap_h(topo, pruned, freqs[0]);
        if (f == wp::Formulation::WfapH2) model = wp::build_wfap_h2(topo, pruned, freqs[0]);
        if (f == wp::Formulation::WfapL) model = wp::build_wfap_enum(topo, pruned, freqs[0], scenario_cap);
      }
      write_text(out_path, wp::emit_lp(model));
      return 0;
    }

    if (*solve) {
      const double a = alpha.value_or(0.5);
      const auto res = locate(topo, a, wp::parse_solver(solver_text), budget_sites, src.seed);
      const wp::Cover cover = wp::prune_unused_aps(topo, res.cover);
      nlohmann::json doc{{"alpha", a},
                         {"sites", cover.sites()},
                         {"psap_objective", res.objective},
                         {"proof_status", wp::to_string(res.proof_status)},
                         {"nodes_explored", res.nodes_explored}};
      nlohmann::json wfap = nlohmann::json::array();
      for (int k : freqs) {
        wp::FaResult fa;
        try {
          fa = wp::reduce_then_solve(topo, cover, k);
        } catch (const wp::BudgetExceeded&) {
          fa = wp::solve_local_fa(topo, cover, k);
        }
        nlohmann::json fmap = nlohmann::json::array();
        for (int j : cover.sites()) fmap.push_back(fa.assignment[j]);
        wfap.push_back({{"num_freqs", k}, {"freq", fmap}, {"objective", fa.value.total}, {"optimal", fa.optimal}});
      }
      doc["wfap"] = wfap;
      write_text(out_path, doc.dump(1) + "\n");
      return 0;
    }

    if (*pipe) {
      wp::PipelineConfig cfg;
      if (!alphas_text.empty()) cfg.alphas = parse_double_list(alphas_text);
      cfg.freqs = freqs;
      cfg.solver = wp::parse_solver(solver_text);
      cfg.budget_sites = budget_sites;
      cfg.seed = src.seed;
      for (double a : cfg.alphas) wp::Alpha{a};
      const auto report = wp::run_pipeline(topo, cfg);
      if (out_path.empty() || out_path == "-") {
        std::cout << wp::report_csv(report);
      } else {
        wp::write_pipeline_outputs(report, out_path);
      }
      return 0;
    }
  } catch (const wp::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const wp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const wp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
