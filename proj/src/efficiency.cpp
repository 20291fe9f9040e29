#include "wifiplan/efficiency.hpp"

#include <cmath>

#include "wifiplan/error.hpp"

namespace wifiplan {

Alpha::Alpha(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidAlpha("alpha must lie in [0,1], got " + std::to_string(value));
  }
}

std::vector<InterferenceCount> interference_counts(const Topology& topo, const Association& assoc) {
  std::vector<InterferenceCount> out(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    const int ai = assoc.ap[i];
    for (int h : topo.neighbors(i)) {
      if (h == i) continue;
      const int ah = assoc.ap[h];
      if (ai == ah) {
        ++out[i].cs;
        ++out[i].sf;
      } else if (topo.covers(ai, h) || topo.covers(ah, i)) {
        ++out[i].sf;
      }
    }
  }
  return out;
}

void check_assignment(const Topology& topo, const Cover& cover, const FrequencyAssignment& f) {
  if (static_cast<int>(f.freq.size()) != topo.num_css()) {
    throw InconsistentDesign("frequency assignment must have one entry per candidate site");
  }
  for (int j : cover.sites()) {
    if (f[j] < 0) throw InconsistentDesign("no frequency for installed site " + std::to_string(j));
  }
}

namespace {

template <class Term>
EfficiencyValue sum_terms(const Topology& topo, const Association& assoc, Term term) {
  EfficiencyValue v;
  v.per_tp.resize(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    v.per_tp[i] = term(i, static_cast<double>(topo.rate(i, assoc.ap[i])));
    v.total += v.per_tp[i];
  }
  return v;
}

}  // namespace

EfficiencyValue eval_design(const Topology& topo, const Cover& cover, const FrequencyAssignment& f) {
  const Association assoc = associate(topo, cover);
  check_assignment(topo, cover, f);
  const auto phi = interferers(topo, assoc, f);
  return sum_terms(topo, assoc, [&](int i, double rate) {
    return rate / (1.0 + static_cast<double>(phi[i].size()));
  });
}

EfficiencyValue eval_sf(const Topology& topo, const Cover& cover) {
  const Association assoc = associate(topo, cover);
  const auto counts = interference_counts(topo, assoc);
  return sum_terms(topo, assoc, [&](int i, double rate) { return rate / (1.0 + counts[i].sf); });
}

EfficiencyValue eval_cs(const Topology& topo, const Cover& cover) {
  const Association assoc = associate(topo, cover);
  const auto counts = interference_counts(topo, assoc);
  return sum_terms(topo, assoc, [&](int i, double rate) { return rate / (1.0 + counts[i].cs); });
}

double pcs_total(const Topology& topo, const Association& assoc, double alpha) {
  const auto counts = interference_counts(topo, assoc);
  double total = 0.0;
  for (int i = 0; i < topo.num_tps(); ++i) {
    total += pcs_term(static_cast<double>(topo.rate(i, assoc.ap[i])), counts[i], alpha);
  }
  return total;
}

EfficiencyValue eval_pcs(const Topology& topo, const Cover& cover, Alpha alpha) {
  const Association assoc = associate(topo, cover);
  const auto counts = interference_counts(topo, assoc);
  return sum_terms(topo, assoc,
                   [&](int i, double rate) { return pcs_term(rate, counts[i], alpha.value()); });
}

}  // namespace wifiplan
