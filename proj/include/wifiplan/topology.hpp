#pragma once

#include <span>
#include <vector>

#include "wifiplan/instance.hpp"

namespace wifiplan {

/// Sorted, duplicate-free set of installed sites. Whether it actually covers
/// every TP is checked by `associate`.
class Cover {
 public:
  Cover() = default;
  explicit Cover(std::vector<int> sites);

  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool contains(int site) const;

  auto operator<=>(const Cover&) const = default;

 private:
  std::vector<int> sites_;
};

/// a_i for every TP: the strongest installed site covering it.
struct Association {
  std::vector<int> ap;
  bool operator==(const Association&) const = default;
};

/// Per-CS frequency, -1 for sites that are not installed.
struct FrequencyAssignment {
  std::vector<int> freq;
  int operator[](int site) const { return freq[static_cast<std::size_t>(site)]; }
  bool operator==(const FrequencyAssignment&) const = default;
};

/// Derived coverage structure of an instance. Immutable once built.
///
/// For a TP i and a site j in J_i (addressed by its rank in the signal
/// order), `weaker(i, r)` is J_ij, `stronger(i, r)` is Ĵ_ij, `cs_set(i, r)` is
/// N^CS_ij = I_j \ {i} and `sf_set(i, r)` is N^SF_ij = I(J_ij) \ I_j.
class Topology {
 public:
  explicit Topology(Instance inst);

  const Instance& instance() const { return inst_; }
  int num_tps() const { return inst_.num_tps(); }
  int num_css() const { return inst_.num_css(); }

  std::span<const int> covering(int tp) const { return inst_.signal_order[tp]; }
  std::span<const int> covered(int site) const { return inst_.covers[site]; }
  /// N_i, sorted; includes i itself.
  std::span<const int> neighbors(int tp) const { return neighbors_[tp]; }

  bool covers(int site, int tp) const {
    return cover_bits_[static_cast<std::size_t>(site) * inst_.num_tps() + tp] != 0;
  }
  /// Position of `site` in the signal order of `tp`, or -1.
  int rank(int tp, int site) const {
    return rank_[static_cast<std::size_t>(tp) * inst_.num_css() + site];
  }
  int rate(int tp, int site) const { return inst_.rates[tp][rank(tp, site)]; }
  int rate_at_rank(int tp, int r) const { return inst_.rates[tp][r]; }

  std::span<const int> weaker(int tp, int r) const;
  std::span<const int> stronger(int tp, int r) const;
  std::span<const int> cs_set(int tp, int r) const { return pair_sets_[tp][r].cs; }
  std::span<const int> sf_set(int tp, int r) const { return pair_sets_[tp][r].sf; }

 private:
  struct PairSets {
    std::vector<int> cs;
    std::vector<int> sf;
  };

  Instance inst_;
  std::vector<char> cover_bits_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<PairSets>> pair_sets_;
};

Topology build_topology(const Instance& inst);

/// Throws NotACover when some TP has no installed covering site.
Association associate(const Topology& topo, const Cover& cover);

/// Φ_i(S,f): neighbors h ≠ i on the same frequency where a_i covers h or a_h
/// covers i. Each list is sorted.
std::vector<std::vector<int>> interferers(const Topology& topo, const Association& assoc,
                                          const FrequencyAssignment& f);

/// Φ^SF_i(S) (frequency dropped) and Φ^CS_i(S) (co-associated only).
std::vector<std::vector<int>> sf_interferers(const Topology& topo, const Association& assoc);
std::vector<std::vector<int>> cs_interferers(const Topology& topo, const Association& assoc);

}  // namespace wifiplan
