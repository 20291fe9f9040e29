#include <gtest/gtest.h>

#include "support.hpp"
#include "wifiplan/aploc.hpp"
#include "wifiplan/error.hpp"
#include "wifiplan/freqassign.hpp"
#include "wifiplan/milp.hpp"

using namespace wifiplan;

namespace {

MilpModel build(Formulation f, const Topology& topo, const Cover& s, double alpha, int k) {
  switch (f) {
    case Formulation::LinA: return build_psap_lin(topo, Alpha(alpha), LinVariant::LinA);
    case Formulation::LinB: return build_psap_lin(topo, Alpha(alpha), LinVariant::LinB);
    case Formulation::PsapL: return build_psap_enum(topo, Alpha(alpha));
    case Formulation::WfapH: return build_wfap_h(topo, s, k);
    case Formulation::WfapH2: return build_wfap_h2(topo, s, k);
    case Formulation::WfapL: return build_wfap_enum(topo, s, k);
  }
  throw std::logic_error("unreachable");
}

constexpr Formulation kAll[] = {Formulation::LinA,  Formulation::LinB,   Formulation::PsapL,
                                Formulation::WfapH, Formulation::WfapH2, Formulation::WfapL};

}  // namespace

TEST(MilpModelTest, RowsMergeAndDropZeros) {
  MilpModel m;
  const int x = m.add_binary("x_0");
  const int y = m.add_binary("x_1");
  m.add_row("r", {{x, 1.0}, {y, 2.0}, {x, -1.0}}, Relation::LessEqual, 1.0);
  ASSERT_EQ(m.rows()[0].terms.size(), 1u);
  EXPECT_EQ(m.rows()[0].terms[0].var, y);
  EXPECT_EQ(m.num_binaries(), 2);
  EXPECT_THROW(m.add_binary("x_0"), std::logic_error);
}

TEST(MilpModelTest, Annotations) {
  EXPECT_EQ(annotation_of("x_3"), "x_j: AP installed at site j");
  EXPECT_NE(annotation_of("xf_1_2").find("frequency"), std::string::npos);
  EXPECT_EQ(annotation_of("q_1"), "unknown");
}

TEST(Formulations, Names) {
  for (Formulation f : kAll) EXPECT_EQ(parse_formulation(to_string(f)), f);
  EXPECT_THROW(parse_formulation("psap-x"), InvalidConfig);
  EXPECT_EQ(lp_file_name("inst", Formulation::PsapL, 0.4, 3), "inst_psap-l_0.4.lp");
  EXPECT_EQ(lp_file_name("inst", Formulation::LinA, 1.0, 3), "inst_lin-a_1.0.lp");
  EXPECT_EQ(lp_file_name("inst", Formulation::WfapH2, 0.4, 3), "inst_wfap-h2_3.lp");
}

TEST(PsapEnum, ReferenceSize) {
  const Topology topo = wptest::inst_a();
  const auto m = build_psap_enum(topo, Alpha(0.4));
  EXPECT_EQ(m.num_binaries(), 16);
  EXPECT_EQ(m.variables().size(), 16u);
  EXPECT_THROW(build_psap_enum(topo, Alpha(0.4), 2), ScenarioExplosion);
}

TEST(WfapEnum, ReferenceCoefficients) {
  const Topology topo = wptest::inst_a();
  const auto m = build_wfap_enum(topo, Cover({0, 1}), 2);
  // TP 1 contests site 1: alone 54/2, sharing a frequency 54/3.
  std::vector<double> coefs;
  for (const Term& t : m.objective()) {
    if (m.variables()[t.var].name.starts_with("wa_1_")) coefs.push_back(t.coef);
  }
  std::sort(coefs.begin(), coefs.end());
  ASSERT_EQ(coefs.size(), 2u);
  EXPECT_DOUBLE_EQ(coefs[0], 18.0);
  EXPECT_DOUBLE_EQ(coefs[1], 27.0);
}

TEST(Formulations, Preconditions) {
  const Topology topo(wptest::micro_instance(9, 40, 16, 0.2, 0.35));
  std::vector<int> all(topo.num_css());
  std::iota(all.begin(), all.end(), 0);
  const Cover s = prune_unused_aps(topo, Cover(all));
  EXPECT_THROW(build_wfap_h2(topo, s, 4), InvalidConfig);
  EXPECT_THROW(build_wfap_h2(topo, s, 3, 10), TooManyAPs);
  EXPECT_THROW(build_wfap_enum(topo, s, 3, 4096, 10), TooManyAPs);
  EXPECT_THROW(build_wfap_h(topo, s, 0), InvalidConfig);
}

TEST(Embedding, DesignsAreFeasibleAndScoreTheEvaluator) {
  std::mt19937_64 rng(11);
  for (Formulation form : kAll) {
    for (int trial = 0; trial < 12; ++trial) {
      const Topology topo(wptest::micro_instance(7000 + trial, 12, 5));
      const double alpha = (trial % 6) / 5.0;
      const int k = 2 + trial % 2;
      Cover s = wptest::random_cover(topo, rng);
      if (!is_psap(form)) s = prune_unused_aps(topo, s);
      const auto model = build(form, topo, s, alpha, k);
      std::optional<FrequencyAssignment> f;
      double expect = eval_pcs(topo, s, Alpha(alpha)).total;
      if (!is_psap(form)) {
        f = wptest::random_assignment(topo, s, k, rng);
        expect = eval_design(topo, s, *f).total;
      }
      const auto res = check_solution(model, embed_design(model, topo, s, f));
      EXPECT_TRUE(res.feasible) << to_string(form) << " trial " << trial << " first violation "
                                << (res.violated_rows.empty() ? "" : res.violated_rows[0]);
      EXPECT_NEAR(res.objective, expect, 1e-6) << to_string(form) << " trial " << trial;
    }
  }
}

TEST(Embedding, Rejections) {
  const Topology topo = wptest::inst_a();
  const auto psap = build_psap_enum(topo, Alpha(0.5));
  EXPECT_THROW(embed_design(psap, topo, Cover({1})), InconsistentDesign);
  const auto wfap = build_wfap_h2(topo, Cover({0, 1}), 2);
  EXPECT_THROW(embed_design(wfap, topo, Cover({0, 1})), InconsistentDesign);
  EXPECT_THROW(embed_design(wfap, topo, Cover({0, 1}), FrequencyAssignment{{0, -1}}), InconsistentDesign);
  EXPECT_THROW(embed_design(wfap, topo, Cover({0, 1}), FrequencyAssignment{{0, 5}}), InconsistentDesign);
}

TEST(CheckSolution, ReportsViolations) {
  const Topology topo = wptest::inst_a();
  const auto m = build_wfap_h2(topo, Cover({0, 1}), 2);
  auto sol = embed_design(m, topo, Cover({0, 1}), FrequencyAssignment{{0, 1}});
  ASSERT_TRUE(check_solution(m, sol).feasible);
  sol.values["c_1"] += 1.0;
  const auto bad = check_solution(m, sol);
  EXPECT_FALSE(bad.feasible);
  EXPECT_NE(std::find(bad.violated_rows.begin(), bad.violated_rows.end(), "def_1"), bad.violated_rows.end());
  sol.values["v_0_1"] = 0.5;
  const auto frac = check_solution(m, sol);
  EXPECT_NE(std::find(frac.violated_rows.begin(), frac.violated_rows.end(), "bounds:v_0_1"),
            frac.violated_rows.end());
  sol.values["nope"] = 1.0;
  EXPECT_THROW(check_solution(m, sol), UnknownVariable);
}

TEST(CheckSolution, WrongProductIsCut) {
  // A product variable that disagrees with c·b violates some linearization row.
  const Topology topo = wptest::inst_a();
  const auto m = build_psap_lin(topo, Alpha(0.5), LinVariant::LinA);
  auto sol = embed_design(m, topo, Cover({0, 1}));
  ASSERT_TRUE(check_solution(m, sol).feasible);
  for (const ProductLink& p : m.products) {
    auto broken = sol;
    broken.values[m.variables()[p.product].name] += 3.0;
    EXPECT_FALSE(check_solution(m, broken).feasible) << m.variables()[p.product].name;
  }
}

TEST(LpFormat, RoundTripIsByteStable) {
  std::mt19937_64 rng(12);
  for (Formulation form : kAll) {
    const Topology topo(wptest::micro_instance(8000, 12, 5));
    const Cover s = prune_unused_aps(topo, wptest::random_cover(topo, rng));
    const auto model = build(form, topo, s, 0.4, 3);
    const std::string text = emit_lp(model);
    const auto parsed = parse_lp(text);
    EXPECT_TRUE(same_model(model, parsed)) << to_string(form);
    EXPECT_EQ(emit_lp(parsed), text) << to_string(form);
    EXPECT_EQ(emit_lp(build(form, topo, s, 0.4, 3)), text);
  }
}

TEST(LpFormat, Layout) {
  const auto text = emit_lp(build_psap_enum(wptest::inst_a(), Alpha(0.4)));
  EXPECT_TRUE(text.starts_with("\\ psap-l"));
  for (const char* section : {"\nMaximize\n", "\nSubject To\n", "\nBounds\n", "\nBinary\n", "\nEnd\n"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
  EXPECT_NE(text.find(" cov_1: l_1_0 + l_1_1 = 1\n"), std::string::npos);
}

TEST(LpFormat, ParseErrorsCarryLines) {
  const char* bad_rhs = "Maximize\n obj: x\nSubject To\n r: x <= abc\nBinary\n x\nEnd\n";
  try {
    parse_lp(bad_rhs);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_lp("Minimize\n obj: x\nEnd\n"), ParseError);
  EXPECT_THROW(parse_lp("Subject To\n r: x <= 1\nEnd\n"), ParseError);
  EXPECT_THROW(parse_lp("Maximize\n obj: x\nSubject To\n r: x 1\nEnd\n"), ParseError);
}

TEST(LpFormat, ReadsHandWrittenModel) {
  const auto m = parse_lp(
      "\\ tiny\nMaximize\n obj: 3 a + 2 b\nSubject To\n c1: a + b <= 1\n c2: - a + 2.5 b >= -1\n"
      "Bounds\n 0 <= t <= 4\nBinary\n a\n b\nEnd\n");
  EXPECT_EQ(m.comment, "tiny");
  EXPECT_EQ(m.num_binaries(), 2);
  ASSERT_EQ(m.rows().size(), 2u);
  EXPECT_EQ(m.rows()[1].terms[0].coef, -1.0);
  EXPECT_EQ(m.rows()[1].rhs, -1.0);
  EXPECT_EQ(m.variables()[*m.find("t")].upper, 4.0);
}

TEST(MilpOracle, PsapEnumOptimumMatchesCombinatorial) {
  const Topology topo = wptest::inst_a();
  for (double alpha : {0.0, 0.5, 1.0}) {
    const auto ans = oracle::brute_force_milp(build_psap_enum(topo, Alpha(alpha)));
    ASSERT_TRUE(ans.feasible);
    EXPECT_NEAR(ans.objective, solve_exact(topo, Alpha(alpha)).objective, 1e-6);
  }
}

TEST(MilpOracle, WfapOptimaMatchCombinatorial) {
  const Topology topo = wptest::inst_a();
  const Cover s({0, 1});
  for (int k : {2, 3}) {
    const double best = solve_exact_fa(topo, s, k).value.total;
    const auto h2 = oracle::brute_force_milp(build_wfap_h2(topo, s, k));
    ASSERT_TRUE(h2.feasible);
    EXPECT_NEAR(h2.objective, best, 1e-6);
    const auto l = oracle::brute_force_milp(build_wfap_enum(topo, s, k));
    ASSERT_TRUE(l.feasible);
    EXPECT_NEAR(l.objective, best, 1e-6);
  }
}

TEST(MilpOracle, TooManyBinaries) {
  const Topology topo(wptest::micro_instance(3, 30, 8));
  EXPECT_THROW(oracle::brute_force_milp(build_psap_lin(topo, Alpha(0.5), LinVariant::LinA)), TooLarge);
}
