#pragma once

#include <cstdint>
#include <vector>

#include "wifiplan/efficiency.hpp"
#include "wifiplan/topology.hpp"

namespace wifiplan {

enum class ProofStatus { Optimal, Heuristic };

const char* to_string(ProofStatus status);

/// Outcome of an AP location (PSAP) solve.
struct PsapResult {
  Cover cover;
  Association association;
  double objective = 0.0;  // e^PCS(S, α)
  ProofStatus proof_status = ProofStatus::Heuristic;
  std::uint64_t nodes_explored = 0;
  double wall_time_s = 0.0;
};

struct ExactBudget {
  int max_sites = 20;
  std::uint64_t max_nodes = 200'000'000;
};

/// Maximizes e^PCS(S, α) over all covers by depth-first include/exclude
/// branching. Equal objectives (within 1e-9) resolve to the lexicographically
/// smallest cover.
///
/// Throws BudgetExceededWith<PsapResult> carrying the best incumbent (marked
/// heuristic) if |J| > budget.max_sites or the node budget runs out.
PsapResult solve_exact(const Topology& topo, Alpha alpha, const ExactBudget& budget = {});

/// Greedy set cover: repeatedly installs the site covering the most
/// uncovered TPs (ties to the smaller id).
Cover greedy_cover(const Topology& topo);

/// Improvement-only local search from the greedy cover with add, drop and
/// swap moves. Each iteration applies the first strictly improving move in
/// a seed-determined order; the search stops early at a local optimum.
PsapResult solve_local_search(const Topology& topo, Alpha alpha, std::uint64_t seed, int iters);

/// A TP's association j_s, the set H_s of co-associated users (⊆ N^CS) and
/// the set U_s of hidden users associated to a weaker site (⊆ N^SF).
struct InterferenceScenario {
  int tp = 0;
  int site = 0;
  std::vector<int> co_associated;
  std::vector<int> hidden;
  double coeff = 0.0;
};

inline constexpr std::uint64_t kDefaultScenarioCap = 4096;

/// All scenarios of `tp`, grouped by site in signal order; within a site the
/// scenario with subset mask m (N^CS members in the low bits, then N^SF) is
/// at offset m. Throws ScenarioExplosion when a site has more than `cap`.
std::vector<InterferenceScenario> enumerate_scenarios(const Topology& topo, int tp, Alpha alpha,
                                                      std::uint64_t cap = kDefaultScenarioCap);

/// Index into enumerate_scenarios(topo, tp, ...) of the scenario a design
/// with association `assoc` realizes at `tp`.
std::size_t realized_scenario_index(const Topology& topo, const Association& assoc, int tp);

}  // namespace wifiplan
