#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"
#include "wifiplan/efficiency.hpp"
#include "wifiplan/error.hpp"

using namespace wifiplan;

TEST(Efficiency, ReferenceValues) {
  const Topology topo = wptest::inst_a();
  const Cover s({0, 1});
  EXPECT_DOUBLE_EQ(eval_design(topo, s, FrequencyAssignment{{0, 0}}).total, 72.0);
  EXPECT_DOUBLE_EQ(eval_design(topo, s, FrequencyAssignment{{0, 1}}).total, 108.0);
  EXPECT_DOUBLE_EQ(eval_sf(topo, s).total, 72.0);
  EXPECT_DOUBLE_EQ(eval_cs(topo, s).total, 108.0);
  const auto pcs = eval_pcs(topo, s, Alpha(0.5));
  EXPECT_NEAR(pcs.total, 84.6, 1e-12);
  ASSERT_EQ(pcs.per_tp.size(), 3u);
  EXPECT_DOUBLE_EQ(pcs.per_tp[0], 27.0);
  EXPECT_NEAR(pcs.per_tp[1], 21.6, 1e-12);
  EXPECT_DOUBLE_EQ(pcs.per_tp[2], 36.0);
}

TEST(Efficiency, Errors) {
  const Topology topo = wptest::inst_a();
  EXPECT_THROW(Alpha(-0.1), InvalidAlpha);
  EXPECT_THROW(Alpha(1.5), InvalidAlpha);
  EXPECT_THROW(eval_cs(topo, Cover({1})), NotACover);
  EXPECT_THROW(eval_design(topo, Cover({0, 1}), FrequencyAssignment{{0}}), InconsistentDesign);
}

TEST(Efficiency, EndpointsExact) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Topology topo(wptest::micro_instance(500 + trial, 20, 7));
    const Cover s = wptest::random_cover(topo, rng);
    EXPECT_EQ(eval_pcs(topo, s, Alpha(0.0)).total, eval_cs(topo, s).total);
    EXPECT_EQ(eval_pcs(topo, s, Alpha(1.0)).total, eval_sf(topo, s).total);
  }
}

TEST(Efficiency, TotalsArePerTpSums) {
  std::mt19937_64 rng(3);
  const Topology topo(wptest::micro_instance(77, 25, 8));
  const Cover s = wptest::random_cover(topo, rng);
  const auto a = associate(topo, s);
  const auto v = eval_design(topo, s, wptest::random_assignment(topo, s, 2, rng));
  EXPECT_NEAR(v.total, std::accumulate(v.per_tp.begin(), v.per_tp.end(), 0.0), 1e-12);
  for (int i = 0; i < topo.num_tps(); ++i) {
    EXPECT_GT(v.per_tp[i], 0.0);
    EXPECT_LE(v.per_tp[i], topo.rate(i, a.ap[i]));
  }
}

TEST(Efficiency, SandwichAndMonotone) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const Topology topo(wptest::micro_instance(700 + trial, 22, 8));
    const Cover s = wptest::random_cover(topo, rng);
    const double sf = eval_sf(topo, s).total;
    const double cs = eval_cs(topo, s).total;
    const double e = eval_design(topo, s, wptest::random_assignment(topo, s, 3, rng)).total;
    EXPECT_LE(sf, e + 1e-12);
    EXPECT_LE(e, cs + 1e-12);
    double prev = cs;
    for (int k = 1; k <= 10; ++k) {
      const double v = eval_pcs(topo, s, Alpha(k / 10.0)).total;
      EXPECT_LE(v, prev + 1e-12);
      prev = v;
    }
  }
}

TEST(Efficiency, TwoFormsAgree) {
  // Γ/(1+α|Φ^SF|+(1-α)|Φ^CS|) against Γ/(1+|Φ^CS|+α|Φ^SF \ Φ^CS|).
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Topology topo(wptest::micro_instance(900 + trial % 20, 20, 7));
    const Cover s = wptest::random_cover(topo, rng);
    const double alpha = unif(rng);
    const auto a = associate(topo, s);
    const auto sf = sf_interferers(topo, a);
    const auto cs = cs_interferers(topo, a);
    double other = 0.0;
    for (int i = 0; i < topo.num_tps(); ++i) {
      const double extra = static_cast<double>(sf[i].size() - cs[i].size());
      other += topo.rate(i, a.ap[i]) / (1.0 + static_cast<double>(cs[i].size()) + alpha * extra);
    }
    worst = std::max(worst, std::abs(other - eval_pcs(topo, s, Alpha(alpha)).total));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Efficiency, MatchesOracleEvaluator) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = wptest::micro_instance(1200 + trial, 20, 7);
    const Topology topo(inst);
    const Cover s = wptest::random_cover(topo, rng);
    const auto f = wptest::random_assignment(topo, s, 3, rng);
    EXPECT_NEAR(eval_design(topo, s, f).total, oracle::efficiency(inst, s.sites(), f.freq), 1e-9);
    EXPECT_NEAR(eval_pcs(topo, s, Alpha(0.3)).total, oracle::pcs_efficiency(inst, s.sites(), 0.3), 1e-9);
  }
}
