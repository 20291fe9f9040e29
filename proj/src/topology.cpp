#include "wifiplan/topology.hpp"

#include <algorithm>

#include "wifiplan/error.hpp"

namespace wifiplan {

Cover::Cover(std::vector<int> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

bool Cover::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

Topology::Topology(Instance inst) : inst_(std::move(inst)) {
  validate(inst_);
  const int n_tp = inst_.num_tps();
  const int n_cs = inst_.num_css();
  cover_bits_.assign(static_cast<std::size_t>(n_tp) * n_cs, 0);
  rank_.assign(static_cast<std::size_t>(n_tp) * n_cs, -1);
  for (int j = 0; j < n_cs; ++j) {
    for (int i : inst_.covers[j]) cover_bits_[static_cast<std::size_t>(j) * n_tp + i] = 1;
  }
  neighbors_.resize(n_tp);
  pair_sets_.resize(n_tp);
  std::vector<char> mark(n_tp, 0);
  for (int i = 0; i < n_tp; ++i) {
    const auto& order = inst_.signal_order[i];
    for (std::size_t r = 0; r < order.size(); ++r) {
      rank_[static_cast<std::size_t>(i) * n_cs + order[r]] = static_cast<int>(r);
    }
    auto& nb = neighbors_[i];
    for (int j : order) nb.insert(nb.end(), inst_.covers[j].begin(), inst_.covers[j].end());
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());

    auto& sets = pair_sets_[i];
    sets.resize(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      const int j = order[r];
      for (int h : inst_.covers[j]) {
        if (h != i) sets[r].cs.push_back(h);
      }
      // I(J_ij) \ I_j
      for (std::size_t q = r + 1; q < order.size(); ++q) {
        for (int h : inst_.covers[order[q]]) {
          if (!mark[h] && !covers(j, h)) {
            mark[h] = 1;
            sets[r].sf.push_back(h);
          }
        }
      }
      for (int h : sets[r].sf) mark[h] = 0;
      std::sort(sets[r].sf.begin(), sets[r].sf.end());
    }
  }
}

std::span<const int> Topology::weaker(int tp, int r) const {
  return covering(tp).subspan(static_cast<std::size_t>(r) + 1);
}

std::span<const int> Topology::stronger(int tp, int r) const {
  return covering(tp).first(static_cast<std::size_t>(r));
}

Topology build_topology(const Instance& inst) { return Topology(inst); }

Association associate(const Topology& topo, const Cover& cover) {
  std::vector<char> installed(topo.num_css(), 0);
  for (int j : cover.sites()) {
    if (j < 0 || j >= topo.num_css()) throw InconsistentDesign("unknown site " + std::to_string(j));
    installed[j] = 1;
  }
  Association assoc;
  assoc.ap.resize(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto order = topo.covering(i);
    auto it = std::find_if(order.begin(), order.end(), [&](int j) { return installed[j] != 0; });
    if (it == order.end()) throw NotACover(i);
    assoc.ap[i] = *it;
  }
  return assoc;
}

namespace {

template <class Pred>
std::vector<std::vector<int>> collect(const Topology& topo, Pred pred) {
  std::vector<std::vector<int>> out(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : topo.neighbors(i)) {
      if (h != i && pred(i, h)) out[i].push_back(h);
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> interferers(const Topology& topo, const Association& assoc,
                                          const FrequencyAssignment& f) {
  if (static_cast<int>(f.freq.size()) != topo.num_css()) {
    throw InconsistentDesign("frequency assignment must have one entry per candidate site");
  }
  for (int a : assoc.ap) {
    if (f[a] < 0) throw InconsistentDesign("no frequency for installed site " + std::to_string(a));
  }
  return collect(topo, [&](int i, int h) {
    const int ai = assoc.ap[i];
    const int ah = assoc.ap[h];
    return f[ai] == f[ah] && (topo.covers(ai, h) || topo.covers(ah, i));
  });
}

std::vector<std::vector<int>> sf_interferers(const Topology& topo, const Association& assoc) {
  return collect(topo, [&](int i, int h) {
    return topo.covers(assoc.ap[i], h) || topo.covers(assoc.ap[h], i);
  });
}

std::vector<std::vector<int>> cs_interferers(const Topology& topo, const Association& assoc) {
  return collect(topo, [&](int i, int h) { return assoc.ap[i] == assoc.ap[h]; });
}

}  // namespace wifiplan
