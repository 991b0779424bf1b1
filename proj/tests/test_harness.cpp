#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "perturb/harness.hpp"

using namespace perturb;

namespace {

std::string without_ms(const std::vector<TrialRecord>& recs) {
  std::ostringstream out;
  auto copy = recs;
  for (auto& r : copy) r.ms = 0;
  write_trials_csv(out, copy);
  return out.str();
}

}  // namespace

TEST(PUnit, ParseAndScale) {
  EXPECT_DOUBLE_EQ(PUnit::parse("abs").scale(300, 3), 1.0);
  EXPECT_DOUBLE_EQ(PUnit::parse("1/n").scale(200, 3), 1.0 / 200);
  EXPECT_NEAR(PUnit::parse("n^-2/3").scale(1000, 3), 0.01, 1e-12);
  EXPECT_NEAR(PUnit::parse("girth").scale(1000, 3), 0.01, 1e-12);
  EXPECT_NEAR(PUnit::parse("girth").scale(64, 6), std::pow(64.0, -5.0 / 6), 1e-12);
  EXPECT_NEAR(PUnit::parse("n^-0.5").scale(100, 3), 0.1, 1e-12);
  EXPECT_THROW(PUnit::parse("n^-2/0"), std::invalid_argument);
  EXPECT_THROW(PUnit::parse("n^-x"), std::invalid_argument);
  EXPECT_THROW(PUnit::parse("linear"), std::invalid_argument);
}

TEST(ResolveSpec, Factors) {
  EXPECT_EQ(resolve_spec("factor3", 300, 3).cycle_lengths.size(), 100u);
  auto s = resolve_spec("factor5", 12, 3);
  EXPECT_EQ(s.cycle_lengths, (std::vector<std::size_t>{5, 5}));
  EXPECT_EQ(s.path_length, 1u);
  auto t = resolve_spec("factor4", 11, 3);
  EXPECT_EQ(t.cycle_lengths, (std::vector<std::size_t>{7, 4}));
  EXPECT_EQ(resolve_spec("C5,C4", 9, 3).vertex_count(), 9u);
  EXPECT_THROW(resolve_spec("C5,C4", 10, 3), std::invalid_argument);
  EXPECT_THROW(resolve_spec("factor3", 12, 4), std::invalid_argument);
}

TEST(RunTrial, TriangleFactorSucceeds) {
  TrialConfig c;
  c.n = 60;
  c.alpha = 0.3;
  c.p = 0.5;
  c.spec = resolve_spec("factor3", 60, 3);
  c.seed = 5;
  auto r = run_trial(c);
  EXPECT_EQ(r.outcome, "success");
  EXPECT_EQ(r.spec, "C3^20");
  EXPECT_EQ(r.host, "bipartite");
}

TEST(RunTrial, NoTrianglesFails) {
  TrialConfig c;
  c.n = 30;
  c.alpha = 0.3;
  c.p = 0.0;
  c.spec = resolve_spec("factor3", 30, 3);
  c.retry_budget = 2;
  auto r = run_trial(c);
  EXPECT_FALSE(r.success());
  EXPECT_NE(r.outcome.find(':'), std::string::npos);
  EXPECT_EQ(r.retries, 1u);
}

TEST(RunTrial, RejectsBadConfig) {
  TrialConfig c;
  c.n = 10;
  c.spec = resolve_spec("factor5", 10, 3);
  c.p = 1.5;
  EXPECT_THROW(run_trial(c), std::invalid_argument);
  c.p = 0.5;
  c.spec = resolve_spec("factor3", 9, 3);
  EXPECT_THROW(run_trial(c), std::invalid_argument);
}

TEST(Sweep, AllSpecsOnCompleteHost) {
  const std::string path = ::testing::TempDir() + "k12.txt";
  {
    std::ofstream out(path);
    write_edge_list(out, make_complete(12));
  }
  SweepConfig cfg;
  cfg.n_grid = {12};
  cfg.p_grid = {1.0};
  cfg.alpha_grid = {0.9};
  cfg.host = HostKind::File;
  cfg.host_file = path;
  cfg.target = TargetKind::AllSpecs;
  cfg.trials = 1;
  auto res = sweep(cfg);
  EXPECT_EQ(res.aggregates.size(), enumerate_specs(12, 3).size());
  for (const auto& r : res.records) EXPECT_TRUE(r.success()) << r.spec << " " << r.outcome;
  std::remove(path.c_str());
}

TEST(Sweep, RowArithmeticAndDeterminism) {
  SweepConfig cfg;
  cfg.n_grid = {30};
  cfg.p_grid = {1, 2, 4, 8};
  cfg.p_unit = PUnit::parse("n^-2/3");
  cfg.alpha_grid = {0.3};
  cfg.trials = 3;
  cfg.retry_budget = 3;
  cfg.base_seed = 77;
  auto a = sweep(cfg);
  EXPECT_EQ(a.records.size(), 12u);
  EXPECT_EQ(a.aggregates.size(), 4u);
  cfg.threads = 3;
  auto b = sweep(cfg);
  EXPECT_EQ(without_ms(a.records), without_ms(b.records));
  std::ostringstream agg;
  write_aggregates_csv(agg, a.aggregates);
  EXPECT_EQ(agg.str().substr(0, agg.str().find('\n')),
            "n,p,alpha,ell,host,spec,trials,successes,rate,mean_retries");
  EXPECT_NEAR(a.aggregates[2].p, 4 * std::pow(30.0, -2.0 / 3), 1e-12);
}

TEST(Sweep, RandomSpecsDifferPerTrial) {
  SweepConfig cfg;
  cfg.n_grid = {40};
  cfg.p_grid = {0.5};
  cfg.alpha_grid = {0.3};
  cfg.ell_grid = {4};
  cfg.target = TargetKind::RandomSpec;
  cfg.trials = 6;
  cfg.retry_budget = 2;
  auto res = sweep(cfg);
  std::set<std::string> specs;
  for (const auto& r : res.records) specs.insert(r.spec);
  EXPECT_GT(specs.size(), 1u);
  EXPECT_EQ(res.aggregates[0].spec, "random");
}

TEST(Sweep, Validation) {
  SweepConfig cfg;
  cfg.p_grid.clear();
  EXPECT_THROW(sweep(cfg), std::invalid_argument);
  cfg = {};
  cfg.trials = 0;
  EXPECT_THROW(sweep(cfg), std::invalid_argument);
  cfg = {};
  cfg.host = HostKind::File;
  EXPECT_THROW(sweep(cfg), std::invalid_argument);
}

TEST(Monotone, Band) {
  auto cell = [](std::size_t s) {
    CellAggregate c;
    c.trials = 50;
    c.successes = s;
    return c;
  };
  EXPECT_TRUE(monotone_within_band({cell(0), cell(10), cell(40), cell(50)}));
  EXPECT_TRUE(monotone_within_band({cell(0), cell(25), cell(22), cell(50)}));
  EXPECT_FALSE(monotone_within_band({cell(0), cell(40), cell(5), cell(50)}));
}
