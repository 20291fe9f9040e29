// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "support.hpp"
#include "wifiplan/aploc.hpp"
#include "wifiplan/error.hpp"
#include "wifiplan/freqassign.hpp"
#include "wifiplan/milp.hpp"
#include "wifiplan/oracle.hpp"
#include "wifiplan/pipeline.hpp"

using namespace wifiplan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few mismatches of a criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream d;
    d << summary << ", " << checks_ << " checks";
    if (failures_ > 0) d << ", " << failures_ << " failed: " << notes_.str();
    return {failures_ == 0, d.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

Outcome exact_psap_vs_oracle() {
  Checker c;
  std::mt19937_64 rng(101);
  for (int k = 0; k < 50; ++k) {
    const int css = 3 + static_cast<int>(rng() % 6);  // 3..8
    const int tps = 5 + static_cast<int>(rng() % 21);  // 5..25
    const auto inst = wptest::micro_instance(10'000 + k, tps, css);
    const Topology topo(inst);
    for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
      const double got = solve_exact(topo, Alpha(alpha)).objective;
      const double ref = oracle::brute_force_psap(inst, alpha).objective;
      c.expect(std::abs(got - ref) <= 1e-9,
               "instance " + std::to_string(k) + " alpha " + num(alpha) + ": " + num(got) + " vs " + num(ref));
    }
  }
  return c.outcome("50 instances x 4 alphas");
}

Outcome exact_wfap_vs_oracle() {
  Checker c;
  std::mt19937_64 rng(202);
  int covers = 0;
  for (int k = 0; covers < 50; ++k) {
    const auto inst = wptest::micro_instance(20'000 + k, 10 + static_cast<int>(rng() % 16), 4 + static_cast<int>(rng() % 6));
    const Topology topo(inst);
    const Cover s = prune_unused_aps(topo, wptest::random_cover(topo, rng, 0.5));
    if (s.size() > 6) continue;
    const int f = 2 + covers % 2;
    ++covers;
    const double got = solve_exact_fa(topo, s, f).value.total;
    const double ref = oracle::brute_force_wfap(inst, s.sites(), f).objective;
    c.expect(std::abs(got - ref) <= 1e-9, "cover " + std::to_string(covers) + ": " + num(got) + " vs " + num(ref));
  }
  return c.outcome("50 covers, |F| in {2,3}");
}

Outcome sandwich_and_monotonicity() {
  Checker c;
  std::mt19937_64 rng(303);
  for (int k = 0; k < 200; ++k) {
    const Topology topo(wptest::micro_instance(30'000 + k, 15 + static_cast<int>(rng() % 20), 4 + static_cast<int>(rng() % 8)));
    const Cover s = wptest::random_cover(topo, rng);
    const auto f = wptest::random_assignment(topo, s, 2 + static_cast<int>(rng() % 2), rng);
    const double sf = eval_sf(topo, s).total;
    const double cs = eval_cs(topo, s).total;
    const double e = eval_design(topo, s, f).total;
    c.expect(sf <= e + 1e-12 && e <= cs + 1e-12, "sandwich broken at sample " + std::to_string(k));
    double prev = std::numeric_limits<double>::infinity();
    for (int g = 0; g <= 10; ++g) {
      const double v = eval_pcs(topo, s, Alpha(g / 10.0)).total;
      c.expect(v <= prev, "e^PCS increases at sample " + std::to_string(k) + " alpha " + num(g / 10.0));
      prev = v;
    }
    c.expect(std::abs(eval_pcs(topo, s, Alpha(0.0)).total - cs) <= 1e-12, "alpha=0 endpoint");
    c.expect(std::abs(eval_pcs(topo, s, Alpha(1.0)).total - sf) <= 1e-12, "alpha=1 endpoint");
  }
  return c.outcome("200 designs, 11-point alpha grid");
}

Outcome embedded_designs() {
  Checker c;
  std::mt19937_64 rng(404);
  const Formulation forms[] = {Formulation::LinA,  Formulation::LinB,   Formulation::PsapL,
                               Formulation::WfapH, Formulation::WfapH2, Formulation::WfapL};
  for (Formulation form : forms) {
    for (int k = 0; k < 20; ++k) {
      const Topology topo(wptest::micro_instance(40'000 + k, 8 + k % 8, 3 + k % 4));
      const double alpha = (k % 6) / 5.0;
      const int nf = 2 + k % 2;
      Cover s = wptest::random_cover(topo, rng);
      MilpModel m;
      std::optional<FrequencyAssignment> f;
      double expect = 0.0;
      switch (form) {
        case Formulation::LinA: m = build_psap_lin(topo, Alpha(alpha), LinVariant::LinA); break;
        case Formulation::LinB: m = build_psap_lin(topo, Alpha(alpha), LinVariant::LinB); break;
        case Formulation::PsapL: m = build_psap_enum(topo, Alpha(alpha), 1u << 16); break;
        default: {
          s = prune_unused_aps(topo, s);
          if (form == Formulation::WfapH) m = build_wfap_h(topo, s, nf);
          if (form == Formulation::WfapH2) m = build_wfap_h2(topo, s, nf);
          if (form == Formulation::WfapL) m = build_wfap_enum(topo, s, nf);
          f = wptest::random_assignment(topo, s, nf, rng);
        }
      }
      expect = f ? eval_design(topo, s, *f).total : eval_pcs(topo, s, Alpha(alpha)).total;
      const auto res = check_solution(m, embed_design(m, topo, s, f));
      const std::string tag = std::string(to_string(form)) + " design " + std::to_string(k);
      c.expect(res.feasible, tag + " infeasible" + (res.violated_rows.empty() ? "" : " (" + res.violated_rows[0] + ")"));
      c.expect(std::abs(res.objective - expect) <= 1e-6, tag + ": " + num(res.objective) + " vs " + num(expect));
    }
  }
  return c.outcome("6 formulations x 20 designs");
}

Outcome micro_milp_optima() {
  Checker c;
  std::mt19937_64 rng(505);
  int psap = 0;
  int h2 = 0;
  int wl = 0;
  for (int k = 0; k < 400 && (psap < 10 || h2 < 10 || wl < 10); ++k) {
    const auto inst = wptest::micro_instance(50'000 + k, 3 + k % 4, 2 + k % 3, 0.35, 0.7);
    const Topology topo(inst);
    const double alpha = (k % 5) / 4.0;
    if (psap < 10) {
      try {
        const auto m = build_psap_enum(topo, Alpha(alpha));
        if (m.num_binaries() <= 22) {
          ++psap;
          const auto ans = oracle::brute_force_milp(m);
          const double ref = solve_exact(topo, Alpha(alpha)).objective;
          c.expect(ans.feasible && std::abs(ans.objective - ref) <= 1e-6,
                   "psap-l instance " + std::to_string(k) + ": " + num(ans.objective) + " vs " + num(ref));
        }
      } catch (const ScenarioExplosion&) {
      }
    }
    const Cover s = prune_unused_aps(topo, wptest::random_cover(topo, rng, 0.7));
    for (int nf : {2, 3}) {
      const double ref = solve_exact_fa(topo, s, nf).value.total;
      const auto mh = build_wfap_h2(topo, s, nf);
      if (h2 < 10 && mh.num_binaries() <= 22) {
        ++h2;
        const auto ans = oracle::brute_force_milp(mh);
        c.expect(ans.feasible && std::abs(ans.objective - ref) <= 1e-6,
                 "wfap-h2 F=" + std::to_string(nf) + " instance " + std::to_string(k) + ": " + num(ans.objective) + " vs " + num(ref));
      }
      const auto ml = build_wfap_enum(topo, s, nf);
      if (wl < 10 && ml.num_binaries() <= 22) {
        ++wl;
        const auto ans = oracle::brute_force_milp(ml);
        c.expect(ans.feasible && std::abs(ans.objective - ref) <= 1e-6,
                 "wfap-l F=" + std::to_string(nf) + " instance " + std::to_string(k) + ": " + num(ans.objective) + " vs " + num(ref));
      }
    }
  }
  c.expect(psap == 10 && h2 == 10 && wl == 10, "not enough micro models found");
  return c.outcome(std::to_string(psap) + " psap-l, " + std::to_string(h2) + " wfap-h2, " + std::to_string(wl) + " wfap-l models");
}

Outcome coloring_shortcut() {
  Checker c;
  std::mt19937_64 rng(606);
  int covers = 0;
  for (int k = 0; covers < 30 && k < 2000; ++k) {
    const Topology topo(wptest::micro_instance(60'000 + k, 30, 12, 0.2, 0.45));
    const Cover s = prune_unused_aps(topo, wptest::random_cover(topo, rng));
    const auto colors = greedy_coloring(build_overlap_graph(topo, s), 3);
    if (std::count(colors.begin(), colors.end(), kUncolored) > 0) continue;
    ++covers;
    const double got = reduce_then_solve(topo, s, 3).value.total;
    const double cs = eval_cs(topo, s).total;
    c.expect(got == cs, "cover " + std::to_string(covers) + ": " + num(got) + " vs e^CS " + num(cs));
  }
  c.expect(covers == 30, "only " + std::to_string(covers) + " colorable covers found");
  return c.outcome(std::to_string(covers) + " greedily 3-colored covers");
}

// The CLI's default generator at 15 sites and 40 test points.
GeneratorConfig trend_config(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.num_tps = 40;
  cfg.num_css = 15;
  cfg.rng_seed = seed;
  cfg.propagation = AnisotropicPropagation{16, 0.25, 0.45};
  return cfg;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Outcome table_trend() {
  Checker c;
  int early_best = 0;
  std::ostringstream where;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Topology topo(generate(trend_config(seed)));
    PipelineConfig cfg;
    cfg.seed = seed;
    const auto csv = parse_csv(report_csv(run_pipeline(topo, cfg)));
    // alpha,psap_objective,wfap_f2,wfap_f3,num_sites,solver
    double prev = std::numeric_limits<double>::infinity();
    double best = -1.0;
    double best_alpha = 0.0;
    double best_early = -1.0;
    for (std::size_t r = 1; r < csv.size(); ++r) {
      const double alpha = std::stod(csv[r][0]);
      const double psap = std::stod(csv[r][1]);
      const double f3 = std::stod(csv[r][3]);
      c.expect(csv[r][5] == "exact", "seed " + std::to_string(seed) + " not solved exactly");
      c.expect(psap < prev, "seed " + std::to_string(seed) + ": PSAP not strictly decreasing at alpha " + csv[r][0]);
      prev = psap;
      if (f3 > best + 1e-9) {
        best = f3;
        best_alpha = alpha;
      }
      if (alpha <= 0.4 + 1e-12) best_early = std::max(best_early, f3);
    }
    if (best_early >= best - 1e-9) ++early_best;
    where << (seed > 1 ? " " : "") << "seed" << seed << "@" << num(best_alpha);
  }
  c.expect(early_best >= 3, "best |F|=3 efficiency at alpha <= 0.4 in only " + std::to_string(early_best) + " of 4");
  return c.outcome("best |F|=3 at alpha<=0.4 in " + std::to_string(early_best) + "/4 (" + where.str() + ")");
}

Outcome determinism() {
  Checker c;
  auto run = [] {
    std::string out;
    GeneratorConfig cfg = trend_config(7);
    cfg.num_tps = 20;
    cfg.num_css = 8;
    cfg.propagation = AnisotropicPropagation{16, 0.15, 0.3};
    const Instance inst = generate(cfg);
    out += dump_instance(inst);
    const Topology topo(inst);
    out += emit_lp(build_psap_enum(topo, Alpha(0.4), 1u << 16));
    out += emit_lp(build_psap_lin(topo, Alpha(0.4), LinVariant::LinB));
    const Cover s = prune_unused_aps(topo, solve_exact(topo, Alpha(0.4)).cover);
    out += emit_lp(build_wfap_h2(topo, s, 3));
    PipelineConfig pc;
    pc.alphas = {0.0, 0.5, 1.0};
    out += report_csv(run_pipeline(topo, pc));
    pc.solver = SolverChoice::Local;
    out += report_csv(run_pipeline(topo, pc));
    return out;
  };
  const std::string a = run();
  const std::string b = run();
  c.expect(a == b, "outputs differ between runs");
  return c.outcome("instance, 3 LP files and 2 CSV reports, " + std::to_string(a.size()) + " bytes");
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"AC1", "exact AP location matches brute force", exact_psap_vs_oracle},
      {"AC2", "exact frequency assignment matches brute force", exact_wfap_vs_oracle},
      {"AC3", "sandwich, monotonicity and endpoints", sandwich_and_monotonicity},
      {"AC4", "embedded designs are feasible and agree with the evaluator", embedded_designs},
      {"AC5", "micro model optima equal combinatorial optima", micro_milp_optima},
      {"AC6", "complete greedy 3-coloring reaches e^CS", coloring_shortcut},
      {"AC7", "alpha trend on 15-site / 40-TP anisotropic instances", table_trend},
      {"AC8", "byte-identical outputs for identical inputs", determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << cr.id << " " << cr.title << " [" << o.detail << "; "
              << num(std::round(secs * 100) / 100) << " s]" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
