#include <gtest/gtest.h>

#include "json.hpp"
#include "perturb/decompose.hpp"
#include "perturb/errors.hpp"
#include "perturb/instance.hpp"

using namespace perturb;

namespace {

ParamSet params_for(std::size_t n, double beta, double eps, std::size_t ell, std::size_t ell0) {
  ParamSet ps;
  ps.n = n;
  ps.alpha = 20 * beta;
  ps.beta = beta;
  ps.epsilon = eps;
  ps.ell = ell;
  ps.ell0 = ell0;
  ps.tolerance_override = 2;
  return ps;
}

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

TEST(Decompose, TwentyTriangles) {
  CycleTypeSpec spec;
  spec.cycle_lengths.assign(20, 3);
  Graph f = build_f_graph(spec);
  auto d = decompose(f, params_for(60, 0.05, 0.1, 3, 100));
  EXPECT_EQ(d.u_set.size(), 30u);
  EXPECT_EQ(d.v_minus_w().size(), 6u);
  EXPECT_EQ(d.w_minus_u().size(), 24u);
  EXPECT_EQ(d.trimmed_run, 0u);
  EXPECT_TRUE(check_partition_props(f, d, 100).all());
  EXPECT_TRUE(edge_partition_audit(f, d));
}

TEST(Decompose, HamiltonCycle) {
  Graph f = make_cycle(100);
  auto d = decompose(f, params_for(100, 0.03, 0.1, 3, 20));
  EXPECT_LE(abs_diff(d.u_set.size(), 30), 2u);
  EXPECT_LE(abs_diff(d.v_minus_w().size(), 10), 2u);
  EXPECT_TRUE(d.trimmed_run == 2 || d.trimmed_run >= 5);
  // U is one run of consecutive cycle vertices
  for (std::size_t i = 1; i < d.u_set.size(); ++i) EXPECT_EQ(d.u_set[i], d.u_set[i - 1] + 1);
  auto props = check_partition_props(f, d, 20);
  EXPECT_TRUE(props.p1);
  EXPECT_TRUE(props.p2);
  EXPECT_TRUE(props.p3);
  EXPECT_TRUE(edge_partition_audit(f, d));
}

TEST(Decompose, SingleTriangleInfeasible) {
  Graph f = make_cycle(3);
  auto ps = params_for(3, 0.05, 0.05, 3, 10);
  try {
    decompose(f, ps);
    FAIL() << "expected infeasibility";
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::InfeasibleDecomposition);
  }
  auto d = decompose(f, ps, {.allow_empty_core = true});
  EXPECT_TRUE(d.u_set.empty());
}

TEST(Decompose, RelaxedOutSize) {
  Graph f = make_cycle(12);
  auto ps = params_for(12, 0.045, 0.045, 3, 13);
  EXPECT_THROW(decompose(f, ps), EmbeddingError);
  auto d = decompose(f, ps, {.relax_out_size = true});
  EXPECT_EQ(d.u_set.size(), 5u);
  EXPECT_EQ(d.v_minus_w().size(), 4u);
  EXPECT_TRUE(check_partition_props(f, d, 13).all());
  EXPECT_TRUE(edge_partition_audit(f, d));
}

TEST(Decompose, RejectsNonMaximalTarget) {
  Graph f(6);
  f.add_edge(0, 1);
  f.add_edge(3, 4);
  EXPECT_THROW(decompose(f, params_for(6, 0.05, 0.05, 3, 10)), std::invalid_argument);
}

TEST(Decompose, PlantedViolations) {
  Graph f = build_f_graph(CycleTypeSpec::parse("C6,C5,C3"));
  Decomposition d;
  d.vertex_count = 14;
  // U = {0..5} (the C6) plus vertex 6 of the C5: an edge crosses U / W\U
  d.u_set = {0, 1, 2, 3, 4, 5, 6};
  d.w_set = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  auto props = check_partition_props(f, d, 100);
  EXPECT_FALSE(props.p3);
  EXPECT_TRUE(props.p2);

  // a C5 inside W \ U with ell0 = 5
  d.u_set = {0, 1, 2, 3, 4, 5};
  props = check_partition_props(f, d, 5);
  EXPECT_FALSE(props.p1);
  EXPECT_TRUE(props.p3);
  EXPECT_TRUE(check_partition_props(f, d, 6).all());
}

TEST(Decompose, JsonRecord) {
  Graph f = make_cycle(100);
  auto d = decompose(f, params_for(100, 0.03, 0.1, 3, 20));
  auto j = nlohmann::json::parse(d.to_json());
  EXPECT_EQ(j["u"].size() + j["w_minus_u"].size() + j["v_minus_w"].size(), 100u);
  EXPECT_EQ(j["tolerance"], 2);
}

TEST(Decompose, RandomSpecsSatisfyProperties) {
  Rng rng(77);
  int done = 0;
  for (int i = 0; i < 400; ++i) {
    std::size_t n = 40 + rng.below(400);
    std::size_t ell = 3 + rng.below(4);
    auto spec = random_spec(n, ell, rng);
    Graph f = build_f_graph(spec);
    auto ps = params_for(n, 0.02 + 0.03 * rng.uniform01(), 0.01 + 0.04 * rng.uniform01(), ell,
                         ell + 1 + rng.below(60));
    try {
      auto d = decompose(f, ps);
      EXPECT_TRUE(check_partition_props(f, d, ps.ell0).all()) << spec.to_string();
      EXPECT_TRUE(edge_partition_audit(f, d));
      EXPECT_LE(abs_diff(d.u_set.size(), ps.u_target()), 2u) << spec.to_string();
      EXPECT_LE(abs_diff(d.v_minus_w().size(), ps.eps_target()), 2u) << spec.to_string();
      ++done;
    } catch (const EmbeddingError& e) {
      EXPECT_EQ(e.kind(), FailureKind::InfeasibleDecomposition);
    }
  }
  EXPECT_GT(done, 200);
}
