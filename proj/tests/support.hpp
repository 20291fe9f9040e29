#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "wifiplan/instance.hpp"
#include "wifiplan/oracle.hpp"
#include "wifiplan/topology.hpp"

namespace wptest {

inline wifiplan::Instance micro_instance(std::uint64_t seed, int tps, int css,
                                         double rmin = 0.3, double rmax = 0.6) {
  wifiplan::GeneratorConfig cfg;
  cfg.num_tps = tps;
  cfg.num_css = css;
  cfg.rng_seed = seed;
  cfg.propagation = wifiplan::AnisotropicPropagation{16, rmin, rmax};
  return wifiplan::generate(cfg);
}

/// A random subset, topped up until every TP is covered.
inline wifiplan::Cover random_cover(const wifiplan::Topology& topo, std::mt19937_64& rng,
                                    double p = 0.4) {
  std::bernoulli_distribution pick(p);
  std::vector<int> sites;
  std::vector<bool> on(static_cast<std::size_t>(topo.num_css()), false);
  for (int j = 0; j < topo.num_css(); ++j) {
    if (pick(rng)) on[j] = true;
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto cov = topo.covering(i);
    if (std::none_of(cov.begin(), cov.end(), [&](int j) { return on[j]; })) {
      on[cov[rng() % cov.size()]] = true;
    }
  }
  for (int j = 0; j < topo.num_css(); ++j) {
    if (on[j]) sites.push_back(j);
  }
  return wifiplan::Cover(sites);
}

inline wifiplan::FrequencyAssignment random_assignment(const wifiplan::Topology& topo,
                                                       const wifiplan::Cover& cover, int num_freqs,
                                                       std::mt19937_64& rng) {
  wifiplan::FrequencyAssignment f{std::vector<int>(static_cast<std::size_t>(topo.num_css()), -1)};
  for (int j : cover.sites()) f.freq[j] = static_cast<int>(rng() % num_freqs);
  return f;
}

inline wifiplan::Topology inst_a() { return wifiplan::Topology(wifiplan::oracle::reference_instance()); }

}  // namespace wptest
