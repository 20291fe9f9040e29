#include "wifiplan/aploc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "wifiplan/error.hpp"

namespace wifiplan {

const char* to_string(ProofStatus status) {
  return status == ProofStatus::Optimal ? "optimal" : "heuristic";
}

namespace {

constexpr double kTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Association associate_flags(const Topology& topo, const std::vector<char>& installed) {
  Association assoc;
  assoc.ap.resize(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int j : topo.covering(i)) {
      if (installed[j]) {
        assoc.ap[i] = j;
        break;
      }
    }
  }
  return assoc;
}

bool covers_all(const Topology& topo, const std::vector<char>& installed) {
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto order = topo.covering(i);
    if (std::none_of(order.begin(), order.end(), [&](int j) { return installed[j] != 0; })) {
      return false;
    }
  }
  return true;
}

std::vector<char> flags_of(const Topology& topo, const Cover& cover) {
  std::vector<char> installed(topo.num_css(), 0);
  for (int j : cover.sites()) installed[j] = 1;
  return installed;
}

Cover cover_of(const std::vector<char>& installed) {
  std::vector<int> sites;
  for (std::size_t j = 0; j < installed.size(); ++j) {
    if (installed[j]) sites.push_back(static_cast<int>(j));
  }
  return Cover(std::move(sites));
}

// Candidate (objective, cover) beats the incumbent: strictly larger beyond
// tolerance, or tied and lexicographically smaller.
bool better(double obj, const Cover& cover, double best_obj, const Cover& best_cover) {
  if (obj > best_obj + kTol) return true;
  if (obj < best_obj - kTol) return false;
  return cover.sites() < best_cover.sites();
}

class ExactSearch {
 public:
  ExactSearch(const Topology& topo, double alpha, const ExactBudget& budget, PsapResult incumbent)
      : topo_(topo), alpha_(alpha), budget_(budget), best_(std::move(incumbent)) {
    order_.resize(topo.num_css());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return topo.covered(a).size() > topo.covered(b).size();
    });
    state_.assign(topo.num_css(), kUndecided);
    available_.resize(topo.num_tps());
    for (int i = 0; i < topo.num_tps(); ++i) {
      available_[i] = static_cast<int>(topo.covering(i).size());
    }
  }

  bool run() { return descend(0); }
  PsapResult take() { return std::move(best_); }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr char kUndecided = 0;
  static constexpr char kIn = 1;
  static constexpr char kOut = 2;

  // Returns false when the node budget is exhausted.
  bool descend(std::size_t depth) {
    if (++nodes_ > budget_.max_nodes) return false;
    if (optimistic_bound() < best_.objective - kTol) return true;
    if (depth == order_.size()) {
      leaf();
      return true;
    }
    const int site = order_[depth];
    state_[site] = kIn;
    if (!descend(depth + 1)) return false;
    if (exclude(site)) {
      if (!descend(depth + 1)) return false;
    }
    include_back(site);
    state_[site] = kUndecided;
    return true;
  }

  // Marks `site` excluded; false if some TP loses its last covering site.
  bool exclude(int site) {
    state_[site] = kOut;
    bool ok = true;
    for (int i : topo_.covered(site)) {
      if (--available_[i] == 0) ok = false;
    }
    return ok;
  }

  void include_back(int site) {
    if (state_[site] != kOut) return;
    for (int i : topo_.covered(site)) ++available_[i];
  }

  // Each TP at the best rate among the sites it might still associate to,
  // with no interferers.
  double optimistic_bound() const {
    double bound = 0.0;
    for (int i = 0; i < topo_.num_tps(); ++i) {
      const auto order = topo_.covering(i);
      int best_rate = 0;
      for (std::size_t r = 0; r < order.size(); ++r) {
        const char s = state_[order[r]];
        if (s == kOut) continue;
        best_rate = std::max(best_rate, topo_.rate_at_rank(i, static_cast<int>(r)));
        if (s == kIn) break;
      }
      bound += best_rate;
    }
    return bound;
  }

  void leaf() {
    std::vector<char> installed(state_.size());
    for (std::size_t j = 0; j < state_.size(); ++j) installed[j] = state_[j] == kIn;
    const Association assoc = associate_flags(topo_, installed);
    const double obj = pcs_total(topo_, assoc, alpha_);
    Cover cover = cover_of(installed);
    if (better(obj, cover, best_.objective, best_.cover)) {
      best_.cover = std::move(cover);
      best_.association = assoc;
      best_.objective = obj;
    }
  }

  const Topology& topo_;
  double alpha_;
  ExactBudget budget_;
  PsapResult best_;
  std::vector<int> order_;
  std::vector<char> state_;
  std::vector<int> available_;
  std::uint64_t nodes_ = 0;
};

// Fisher-Yates with raw engine output, so move orders do not depend on the
// standard library's distribution implementation.
template <class T>
void portable_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t k = v.size(); k > 1; --k) {
    std::swap(v[k - 1], v[rng() % k]);
  }
}

}  // namespace

Cover greedy_cover(const Topology& topo) {
  std::vector<char> covered(topo.num_tps(), 0);
  std::vector<char> installed(topo.num_css(), 0);
  int remaining = topo.num_tps();
  while (remaining > 0) {
    int best_site = -1;
    int best_gain = 0;
    for (int j = 0; j < topo.num_css(); ++j) {
      if (installed[j]) continue;
      int gain = 0;
      for (int i : topo.covered(j)) gain += covered[i] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best_site = j;
      }
    }
    if (best_site < 0) break;
    installed[best_site] = 1;
    for (int i : topo.covered(best_site)) {
      if (!covered[i]) {
        covered[i] = 1;
        --remaining;
      }
    }
  }
  return cover_of(installed);
}

PsapResult solve_local_search(const Topology& topo, Alpha alpha, std::uint64_t seed, int iters) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  std::vector<char> installed = flags_of(topo, greedy_cover(topo));
  Association assoc = associate(topo, cover_of(installed));
  double current = pcs_total(topo, assoc, alpha.value());
  std::uint64_t evaluations = 1;

  struct Move {
    int drop;
    int add;
  };
  for (int it = 0; it < iters; ++it) {
    std::vector<Move> moves;
    for (int j = 0; j < topo.num_css(); ++j) {
      if (installed[j]) {
        moves.push_back({j, -1});
        for (int k = 0; k < topo.num_css(); ++k) {
          if (!installed[k]) moves.push_back({j, k});
        }
      } else {
        moves.push_back({-1, j});
      }
    }
    portable_shuffle(moves, rng);
    bool improved = false;
    for (const Move& m : moves) {
      if (m.drop >= 0) installed[m.drop] = 0;
      if (m.add >= 0) installed[m.add] = 1;
      if (covers_all(topo, installed)) {
        Association cand = associate_flags(topo, installed);
        const double obj = pcs_total(topo, cand, alpha.value());
        ++evaluations;
        if (obj > current + kTol) {
          current = obj;
          assoc = std::move(cand);
          improved = true;
          break;
        }
      }
      if (m.drop >= 0) installed[m.drop] = 1;
      if (m.add >= 0) installed[m.add] = 0;
    }
    if (!improved) break;
  }

  PsapResult result;
  result.cover = cover_of(installed);
  result.association = std::move(assoc);
  result.objective = current;
  result.proof_status = ProofStatus::Heuristic;
  result.nodes_explored = evaluations;
  result.wall_time_s = seconds_since(start);
  return result;
}

PsapResult solve_exact(const Topology& topo, Alpha alpha, const ExactBudget& budget) {
  const auto start = Clock::now();
  PsapResult warm = solve_local_search(topo, alpha, 0, 64);
  if (topo.num_css() > budget.max_sites) {
    warm.wall_time_s = seconds_since(start);
    throw BudgetExceededWith<PsapResult>(
        "exact AP location limited to " + std::to_string(budget.max_sites) + " sites, instance has " +
            std::to_string(topo.num_css()),
        std::move(warm));
  }
  ExactSearch search(topo, alpha.value(), budget, std::move(warm));
  const bool complete = search.run();
  const std::uint64_t nodes = search.nodes();
  PsapResult best = search.take();
  best.nodes_explored = nodes;
  best.wall_time_s = seconds_since(start);
  if (!complete) {
    best.proof_status = ProofStatus::Heuristic;
    throw BudgetExceededWith<PsapResult>("exact AP location exhausted its node budget",
                                         std::move(best));
  }
  best.proof_status = ProofStatus::Optimal;
  return best;
}

namespace {

std::uint64_t scenario_bits(const Topology& topo, int tp, int r) {
  return topo.cs_set(tp, r).size() + topo.sf_set(tp, r).size();
}

}  // namespace

std::vector<InterferenceScenario> enumerate_scenarios(const Topology& topo, int tp, Alpha alpha,
                                                      std::uint64_t cap) {
  if (cap < 1) throw InvalidConfig("scenario cap must be >= 1");
  const auto order = topo.covering(tp);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::uint64_t bits = scenario_bits(topo, tp, static_cast<int>(r));
    if (bits >= 63 || (std::uint64_t{1} << bits) > cap) {
      throw ScenarioExplosion(tp, order[r], bits);
    }
  }
  const double a = alpha.value();
  std::vector<InterferenceScenario> out;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const int rr = static_cast<int>(r);
    const auto ncs = topo.cs_set(tp, rr);
    const auto nsf = topo.sf_set(tp, rr);
    const double rate = topo.rate_at_rank(tp, rr);
    const std::uint64_t count = std::uint64_t{1} << scenario_bits(topo, tp, rr);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      InterferenceScenario s;
      s.tp = tp;
      s.site = order[r];
      for (std::size_t b = 0; b < ncs.size(); ++b) {
        if (mask >> b & 1U) s.co_associated.push_back(ncs[b]);
      }
      for (std::size_t b = 0; b < nsf.size(); ++b) {
        if (mask >> (ncs.size() + b) & 1U) s.hidden.push_back(nsf[b]);
      }
      const double u = static_cast<double>(s.hidden.size());
      const double h = static_cast<double>(s.co_associated.size());
      s.coeff = rate / (1.0 + a * (u + static_cast<double>(ncs.size())) + (1.0 - a) * h);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::size_t realized_scenario_index(const Topology& topo, const Association& assoc, int tp) {
  const int site = assoc.ap[tp];
  const int r = topo.rank(tp, site);
  if (r < 0) throw InconsistentDesign("association of TP " + std::to_string(tp) + " does not cover it");
  std::size_t offset = 0;
  for (int q = 0; q < r; ++q) {
    const std::uint64_t bits = scenario_bits(topo, tp, q);
    if (bits >= 63) throw ScenarioExplosion(tp, topo.covering(tp)[q], bits);
    offset += std::size_t{1} << bits;
  }
  const auto ncs = topo.cs_set(tp, r);
  const auto nsf = topo.sf_set(tp, r);
  std::uint64_t mask = 0;
  for (std::size_t b = 0; b < ncs.size(); ++b) {
    if (assoc.ap[ncs[b]] == site) mask |= std::uint64_t{1} << b;
  }
  for (std::size_t b = 0; b < nsf.size(); ++b) {
    if (topo.covers(assoc.ap[nsf[b]], tp)) mask |= std::uint64_t{1} << (ncs.size() + b);
  }
  return offset + mask;
}

}  // namespace wifiplan
