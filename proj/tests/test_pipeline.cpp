#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wifiplan/error.hpp"
#include "wifiplan/pipeline.hpp"

using namespace wifiplan;

TEST(Pipeline, ReferenceReport) {
  PipelineConfig cfg;
  cfg.alphas = {1.0, 0.0, 0.5};
  const auto report = run_pipeline(wptest::inst_a(), cfg);
  EXPECT_EQ(report_csv(report),
            "alpha,psap_objective,wfap_f2,wfap_f3,num_sites,solver\n"
            "0,108,108,108,2,exact\n"
            "0.5,84.6,108,108,2,exact\n"
            "1,72,108,108,2,exact\n");
}

TEST(Pipeline, DefaultGrid) {
  EXPECT_EQ(default_alphas(), (std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0}));
  EXPECT_EQ(parse_solver("local"), SolverChoice::Local);
  EXPECT_THROW(parse_solver("milp"), InvalidConfig);
}

TEST(Pipeline, RowsAreConsistent) {
  const Topology topo(wptest::micro_instance(17, 30, 10));
  const auto report = run_pipeline(topo, PipelineConfig{});
  ASSERT_EQ(report.rows.size(), 6u);
  double prev = 1e300;
  for (const PipelineRow& row : report.rows) {
    EXPECT_EQ(row.solver, "exact");
    EXPECT_NEAR(row.psap_objective, eval_pcs(topo, row.cover, Alpha(row.alpha)).total, 1e-9);
    EXPECT_LE(row.psap_objective, prev + 1e-9);
    prev = row.psap_objective;
    const double sf = eval_sf(topo, row.cover).total;
    const double cs = eval_cs(topo, row.cover).total;
    for (const WfapOutcome& w : row.wfap) {
      EXPECT_NEAR(w.objective, eval_design(topo, row.cover, w.assignment).total, 1e-9);
      EXPECT_LE(sf, w.objective + 1e-9);
      EXPECT_LE(w.objective, cs + 1e-9);
    }
  }
}

TEST(Pipeline, NeverBeatsJointOptimum) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = wptest::micro_instance(60 + seed, 14, 6);
    const Topology topo(inst);
    PipelineConfig cfg;
    cfg.freqs = {2};
    const double joint = oracle::brute_force_wpp(inst, 2).objective;
    for (const PipelineRow& row : run_pipeline(topo, cfg).rows) {
      EXPECT_LE(row.wfap[0].objective, joint + 1e-9) << "seed " << seed << " alpha " << row.alpha;
    }
  }
}

TEST(Pipeline, LocalSolverPath) {
  const Topology topo(wptest::micro_instance(5, 40, 14));
  PipelineConfig cfg;
  cfg.solver = SolverChoice::Local;
  cfg.alphas = {0.0, 1.0};
  const auto report = run_pipeline(topo, cfg);
  for (const PipelineRow& row : report.rows) EXPECT_EQ(row.solver, "local");
  cfg.solver = SolverChoice::Auto;
  cfg.budget_sites = 5;
  EXPECT_EQ(run_pipeline(topo, cfg).rows[0].solver, "local");
}

TEST(Pipeline, OutputsRecomputeFromArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "wifiplan_pipeline_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const Topology topo(wptest::micro_instance(23, 25, 9));
  PipelineConfig cfg;
  cfg.alphas = {0.0, 0.4};
  const auto report = run_pipeline(topo, cfg);
  write_pipeline_outputs(report, dir / "run.csv");
  EXPECT_TRUE(std::filesystem::exists(dir / "run_timings.csv"));
  for (const char* tag : {"0.0", "0.4"}) {
    std::ifstream in(dir / (std::string("run_alpha_") + tag + ".json"));
    ASSERT_TRUE(in.good()) << tag;
    const auto doc = nlohmann::json::parse(in);
    const Cover s(doc["sites"].get<std::vector<int>>());
    EXPECT_NEAR(doc["psap_objective"].get<double>(),
                eval_pcs(topo, s, Alpha(doc["alpha"].get<double>())).total, 1e-6);
    for (const auto& w : doc["wfap"]) {
      FrequencyAssignment f{std::vector<int>(topo.num_css(), -1)};
      const auto freq = w["freq"].get<std::vector<int>>();
      ASSERT_EQ(freq.size(), s.sites().size());
      for (std::size_t k = 0; k < freq.size(); ++k) f.freq[s.sites()[k]] = freq[k];
      EXPECT_NEAR(w["objective"].get<double>(), eval_design(topo, s, f).total, 1e-6);
    }
  }
  std::ifstream csv(dir / "run.csv");
  std::stringstream ss;
  ss << csv.rdbuf();
  EXPECT_EQ(ss.str(), report_csv(report));
  // A regular file cannot serve as the output directory.
  EXPECT_THROW(write_pipeline_outputs(report, dir / "run.csv" / "nested.csv"), IoError);
  std::filesystem::remove_all(dir);
}
