#include "wifiplan/freqassign.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "wifiplan/error.hpp"

namespace wifiplan {

FixedAssociationSets fixed_association_sets(const Topology& topo, const Cover& cover) {
  FixedAssociationSets out;
  out.association = associate(topo, cover);
  const auto& ap = out.association.ap;
  const int n = topo.num_tps();
  out.co_associated.resize(n);
  out.hidden.resize(n);
  out.contested.resize(n);
  out.contested_aps.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ai = ap[i];
    for (int h : topo.neighbors(i)) {
      if (h == i) continue;
      if (ap[h] == ai) {
        out.co_associated[i].push_back(h);
        continue;
      }
      const bool in_own_area = topo.covers(ai, h);
      const bool reaches_i = topo.covers(ap[h], i);
      if (!in_own_area && reaches_i) out.hidden[i].push_back(h);
      if (in_own_area || reaches_i) {
        out.contested[i].push_back(h);
        out.contested_aps[i].push_back(ap[h]);
      }
    }
    auto& c = out.contested_aps[i];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return out;
}

Cover prune_unused_aps(const Topology& topo, const Cover& cover) {
  const Association assoc = associate(topo, cover);
  return Cover(assoc.ap);
}

std::vector<std::pair<int, int>> OverlapGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_nodes(); ++u) {
    for (int v : adjacency[u]) {
      if (u < v) out.emplace_back(sites[u], sites[v]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

OverlapGraph build_overlap_graph(const Topology& topo, const Cover& cover) {
  const Association assoc = associate(topo, cover);
  OverlapGraph g;
  g.sites = cover.sites();
  g.adjacency.resize(g.sites.size());
  std::vector<int> node_of(topo.num_css(), -1);
  for (int k = 0; k < g.num_nodes(); ++k) node_of[g.sites[k]] = k;
  for (int i = 0; i < topo.num_tps(); ++i) {
    const int a = node_of[assoc.ap[i]];
    for (int j : topo.covering(i)) {
      const int b = node_of[j];
      if (b < 0 || b == a) continue;
      g.adjacency[a].push_back(b);
      g.adjacency[b].push_back(a);
    }
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

std::vector<int> greedy_coloring(const OverlapGraph& graph, int num_colors) {
  if (num_colors < 1) throw InvalidConfig("need at least one color");
  const int n = graph.num_nodes();
  std::vector<int> color(n, kUncolored);
  std::vector<char> done(n, 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    int pick_sat = -1;
    int pick_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      std::vector<char> seen(num_colors, 0);
      int sat = 0;
      for (int u : graph.adjacency[v]) {
        if (color[u] != kUncolored && !seen[color[u]]) {
          seen[color[u]] = 1;
          ++sat;
        }
      }
      const int deg = static_cast<int>(graph.adjacency[v].size());
      if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
        pick = v;
        pick_sat = sat;
        pick_deg = deg;
      }
    }
    done[pick] = 1;
    std::vector<char> taken(num_colors, 0);
    for (int u : graph.adjacency[pick]) {
      if (color[u] != kUncolored) taken[color[u]] = 1;
    }
    for (int c = 0; c < num_colors; ++c) {
      if (!taken[c]) {
        color[pick] = c;
        break;
      }
    }
  }
  return color;
}

namespace {

constexpr double kTol = 1e-9;

// Exact search over the colorings of one group of APs. Only TPs associated
// to an AP of the group contribute, so the group must be closed under
// overlap adjacency (a union of components) for the optimum to be global.
class GroupSearch {
 public:
  GroupSearch(const Topology& topo, const FixedAssociationSets& fas, std::vector<int> sites,
              int num_freqs)
      : sites_(std::move(sites)), num_freqs_(num_freqs) {
    std::vector<int> local(topo.num_css(), -1);
    for (std::size_t k = 0; k < sites_.size(); ++k) local[sites_[k]] = static_cast<int>(k);
    incident_.resize(sites_.size());
    for (int i = 0; i < topo.num_tps(); ++i) {
      const int a = local[fas.association.ap[i]];
      if (a < 0) continue;
      const int t = static_cast<int>(base_.size());
      base_.push_back(1.0 + static_cast<double>(fas.co_associated[i].size()));
      rate_.push_back(topo.rate(i, fas.association.ap[i]));
      for (int k : fas.contested_aps[i]) {
        int w = 0;
        for (int h : fas.contested[i]) w += fas.association.ap[h] == k ? 1 : 0;
        const int e = static_cast<int>(entries_.size());
        entries_.push_back({t, a, local[k], w});
        incident_[a].push_back(e);
        incident_[local[k]].push_back(e);
      }
    }
    conflicts_.assign(base_.size(), 0);
    terms_.resize(base_.size());
    for (std::size_t t = 0; t < base_.size(); ++t) {
      terms_[t] = rate_[t] / base_[t];
      bound_ += terms_[t];
    }
    order_.resize(sites_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return incident_[x].size() > incident_[y].size();
    });
    color_.assign(sites_.size(), kUncolored);
  }

  void run() {
    best_color_.assign(sites_.size(), 0);
    descend(0, 0);
  }

  const std::vector<int>& sites() const { return sites_; }
  const std::vector<int>& best_colors() const { return best_color_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Entry {
    int tp;
    int ap;
    int other;
    int weight;
  };

  void descend(std::size_t pos, int used) {
    ++nodes_;
    if (found_ && bound_ <= best_ + kTol) return;
    if (pos == order_.size()) {
      found_ = true;
      best_ = bound_;
      best_color_ = color_;
      return;
    }
    const int p = order_[pos];
    const int max_color = std::min(used, num_freqs_ - 1);
    for (int c = 0; c <= max_color; ++c) {
      color_[p] = c;
      const std::size_t mark = trail_.size();
      for (int e : incident_[p]) {
        const Entry& en = entries_[e];
        const int other = en.ap == p ? en.other : en.ap;
        if (color_[other] == c && other != p) bump(en.tp, en.weight);
      }
      descend(pos + 1, std::max(used, c + 1));
      while (trail_.size() > mark) {
        const auto [t, w] = trail_.back();
        trail_.pop_back();
        bump(t, -w, false);
      }
      color_[p] = kUncolored;
    }
  }

  void bump(int t, int w, bool record = true) {
    bound_ -= terms_[t];
    conflicts_[t] += w;
    terms_[t] = rate_[t] / (base_[t] + conflicts_[t]);
    bound_ += terms_[t];
    if (record) trail_.emplace_back(t, w);
  }

  std::vector<int> sites_;
  int num_freqs_;
  std::vector<double> base_;
  std::vector<double> rate_;
  std::vector<Entry> entries_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> conflicts_;
  std::vector<double> terms_;
  std::vector<int> order_;
  std::vector<int> color_;
  std::vector<int> best_color_;
  std::vector<std::pair<int, int>> trail_;
  double bound_ = 0.0;
  double best_ = -std::numeric_limits<double>::infinity();
  bool found_ = false;
  std::uint64_t nodes_ = 0;
};

FaResult finish(const Topology& topo, const Cover& cover, FrequencyAssignment f, bool optimal,
                std::uint64_t nodes) {
  FaResult r;
  r.value = eval_design(topo, cover, f);
  r.assignment = std::move(f);
  r.optimal = optimal;
  r.nodes_explored = nodes;
  return r;
}

void check_freqs(int num_freqs) {
  if (num_freqs < 1) throw InvalidConfig("need at least one frequency");
}

}  // namespace

FaResult solve_local_fa(const Topology& topo, const Cover& cover, int num_freqs) {
  check_freqs(num_freqs);
  const OverlapGraph g = build_overlap_graph(topo, cover);
  std::vector<int> col = greedy_coloring(g, num_freqs);
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (col[v] != kUncolored) continue;
    std::vector<int> clash(num_freqs, 0);
    for (int u : g.adjacency[v]) {
      if (col[u] != kUncolored) ++clash[col[u]];
    }
    col[v] = static_cast<int>(std::min_element(clash.begin(), clash.end()) - clash.begin());
  }
  FrequencyAssignment f{std::vector<int>(topo.num_css(), -1)};
  for (int v = 0; v < g.num_nodes(); ++v) f.freq[g.sites[v]] = col[v];
  double current = eval_design(topo, cover, f).total;
  std::uint64_t evaluations = 1;
  for (bool improved = true; improved;) {
    improved = false;
    for (int site : g.sites) {
      const int keep = f.freq[site];
      for (int c = 0; c < num_freqs; ++c) {
        if (c == keep) continue;
        f.freq[site] = c;
        const double v = eval_design(topo, cover, f).total;
        ++evaluations;
        if (v > current + kTol) {
          current = v;
          improved = true;
          break;
        }
        f.freq[site] = keep;
      }
    }
  }
  return finish(topo, cover, std::move(f), false, evaluations);
}

FaResult solve_exact_fa(const Topology& topo, const Cover& cover, int num_freqs,
                        const FaBudget& budget) {
  check_freqs(num_freqs);
  const FixedAssociationSets fas = fixed_association_sets(topo, cover);
  if (cover.size() > budget.max_sites) {
    throw BudgetExceededWith<FaResult>("exact frequency assignment limited to " +
                                           std::to_string(budget.max_sites) + " APs, cover has " +
                                           std::to_string(cover.size()),
                                       solve_local_fa(topo, cover, num_freqs));
  }
  GroupSearch search(topo, fas, cover.sites(), num_freqs);
  search.run();
  FrequencyAssignment f{std::vector<int>(topo.num_css(), -1)};
  for (std::size_t k = 0; k < search.sites().size(); ++k) {
    f.freq[search.sites()[k]] = search.best_colors()[k];
  }
  return finish(topo, cover, std::move(f), true, search.nodes());
}

FaResult reduce_then_solve(const Topology& topo, const Cover& cover, int num_freqs,
                           const FaBudget& budget) {
  check_freqs(num_freqs);
  const OverlapGraph g = build_overlap_graph(topo, cover);
  const std::vector<int> col = greedy_coloring(g, num_freqs);
  FrequencyAssignment f{std::vector<int>(topo.num_css(), -1)};
  for (int v = 0; v < g.num_nodes(); ++v) f.freq[g.sites[v]] = col[v];
  if (std::find(col.begin(), col.end(), kUncolored) == col.end()) {
    return finish(topo, cover, std::move(f), true, 0);
  }

  const FixedAssociationSets fas = fixed_association_sets(topo, cover);
  std::vector<int> component(g.num_nodes(), -1);
  std::uint64_t nodes = 0;
  for (int root = 0; root < g.num_nodes(); ++root) {
    if (component[root] >= 0) continue;
    std::vector<int> members{root};
    component[root] = root;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (int u : g.adjacency[members[k]]) {
        if (component[u] < 0) {
          component[u] = root;
          members.push_back(u);
        }
      }
    }
    const bool complete =
        std::none_of(members.begin(), members.end(), [&](int v) { return col[v] == kUncolored; });
    if (complete) continue;
    if (static_cast<int>(members.size()) > budget.max_sites) {
      throw BudgetExceededWith<FaResult>(
          "overlap component of " + std::to_string(members.size()) +
              " APs exceeds the exact frequency assignment budget of " +
              std::to_string(budget.max_sites),
          solve_local_fa(topo, cover, num_freqs));
    }
    std::vector<int> sites;
    for (int v : members) sites.push_back(g.sites[v]);
    std::sort(sites.begin(), sites.end());
    GroupSearch search(topo, fas, std::move(sites), num_freqs);
    search.run();
    nodes += search.nodes();
    for (std::size_t k = 0; k < search.sites().size(); ++k) {
      f.freq[search.sites()[k]] = search.best_colors()[k];
    }
  }
  return finish(topo, cover, std::move(f), true, nodes);
}

}  // namespace wifiplan
