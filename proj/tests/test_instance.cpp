#include <gtest/gtest.h>

#include <set>

#include "perturb/instance.hpp"
#include "perturb/oracle.hpp"
#include "perturb/params.hpp"

using namespace perturb;

TEST(Spec, ParseAndPrint) {
  auto s = CycleTypeSpec::parse("C3,C5,C4;P2");
  EXPECT_EQ(s.cycle_lengths, (std::vector<std::size_t>{5, 4, 3}));
  EXPECT_EQ(s.path_length, 2u);
  EXPECT_EQ(s.vertex_count(), 15u);
  EXPECT_EQ(s.to_string(), "C5,C4,C3;P2");
  EXPECT_EQ(CycleTypeSpec::parse(s.to_string()), s);
  EXPECT_EQ(CycleTypeSpec::parse("P4").to_string(), "P4");
  auto rep = CycleTypeSpec::parse("C3^4,C5,C5;P1");
  EXPECT_EQ(rep.cycle_lengths, (std::vector<std::size_t>{5, 5, 3, 3, 3, 3}));
  EXPECT_EQ(rep.to_string(), "C5,C5,C3^4;P1");
  EXPECT_EQ(CycleTypeSpec::parse(rep.to_string()), rep);
  EXPECT_THROW(CycleTypeSpec::parse("C3^0"), ParseError);
  EXPECT_THROW(CycleTypeSpec::parse("C3^"), ParseError);
  EXPECT_EQ(CycleTypeSpec::parse(";P4"), CycleTypeSpec::parse("P4"));
  EXPECT_THROW(CycleTypeSpec::parse("C2"), ParseError);
  EXPECT_THROW(CycleTypeSpec::parse("C3;Q1"), ParseError);
}

TEST(Spec, MaximalFamily) {
  EXPECT_TRUE(CycleTypeSpec::parse("C3,C5").in_maximal_family(3));
  EXPECT_FALSE(CycleTypeSpec::parse("C3").in_maximal_family(4));
  EXPECT_TRUE(CycleTypeSpec::parse("C5;P3").in_maximal_family(5));
  EXPECT_FALSE(CycleTypeSpec::parse("C5;P4").in_maximal_family(5));
}

TEST(Instance, GnpIsSeededAndDense) {
  Graph a = sample_gnp(200, 0.1, 3);
  EXPECT_EQ(a, sample_gnp(200, 0.1, 3));
  EXPECT_NE(a, sample_gnp(200, 0.1, 4));
  const double expected = 0.1 * 200 * 199 / 2;
  EXPECT_NEAR(static_cast<double>(a.edge_count()), expected, 5 * std::sqrt(expected));
  EXPECT_EQ(sample_gnp(30, 0.0, 1).edge_count(), 0u);
  EXPECT_EQ(sample_gnp(30, 1.0, 1).edge_count(), 435u);
}

TEST(Instance, Hosts) {
  Graph b = make_bipartite_host(60, 0.3);
  EXPECT_EQ(b.edge_count(), 18u * 42u);
  EXPECT_TRUE(min_degree_audit(b, 0.3));
  EXPECT_FALSE(b.has_edge(0, 1));
  EXPECT_TRUE(b.has_edge(0, 59));
  Graph r = make_random_dense_host(100, 0.2, 11);
  EXPECT_TRUE(min_degree_audit(r, 0.2));
}

TEST(Instance, BuildFGraph) {
  auto spec = CycleTypeSpec::parse("C4,C3;P1");
  Graph f = build_f_graph(spec);
  EXPECT_EQ(f.vertex_count(), 9u);
  EXPECT_EQ(f.edge_count(), 8u);
  EXPECT_EQ(spec_of(f), spec);
  EXPECT_TRUE(verify_family_membership(f, 3, true));
}

TEST(Instance, EnumerateSpecsSmall) {
  auto specs = enumerate_specs(7, 3);
  std::set<std::string> seen;
  for (const auto& s : specs) {
    EXPECT_EQ(s.vertex_count(), 7u);
    EXPECT_TRUE(s.in_maximal_family(3));
    EXPECT_TRUE(seen.insert(s.to_string()).second);
  }
  // no path: 7, 4+3; one vertex: 6, 3+3; one edge: 5
  EXPECT_EQ(seen, (std::set<std::string>{"C7", "C4,C3", "C6;P0", "C3,C3;P0", "C5;P1"}));
}

TEST(Instance, EnumerateSpecsCountsMatchPartitions) {
  // partitions of m into parts >= 3: m=12 -> 1+... brute-force check
  auto count_parts = [](std::size_t m) {
    std::vector<std::vector<std::size_t>> dp(m + 1, std::vector<std::size_t>(m + 2, 0));
    // dp[s][j]: partitions of s into parts >= 3 and <= j
    for (std::size_t j = 0; j <= m + 1; ++j) dp[0][j] = 1;
    for (std::size_t s = 1; s <= m; ++s)
      for (std::size_t j = 1; j <= m + 1; ++j) {
        dp[s][j] = dp[s][j - 1];
        if (j >= 3 && j <= s) dp[s][j] += dp[s - j][j];
      }
    return dp[m][m + 1];
  };
  for (std::size_t n : {9u, 12u, 15u}) {
    EXPECT_EQ(enumerate_specs(n, 3).size(), count_parts(n) + count_parts(n - 1) + count_parts(n - 2));
  }
}

TEST(Instance, AugmentToMaximal) {
  Graph f(10);
  for (auto [a, b] : std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {6, 7}}) f.add_edge(a, b);
  Graph m = augment_to_maximal(f, 3);
  EXPECT_TRUE(verify_family_membership(m, 3, true));
  for (auto [a, b] : f.edges()) EXPECT_TRUE(m.has_edge(a, b));
  EXPECT_EQ(spec_of(m).to_string(), "C7,C3");
  Graph lone(2);
  EXPECT_EQ(augment_to_maximal(lone, 3).edge_count(), 1u);
  EXPECT_THROW(augment_to_maximal(make_cycle(3), 4), std::invalid_argument);
}

TEST(Instance, RandomSpecsAreMembers) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 3 + rng.below(200);
    std::size_t ell = 3 + rng.below(5);
    auto s = random_spec(n, ell, rng);
    EXPECT_EQ(s.vertex_count(), n);
    EXPECT_TRUE(s.in_maximal_family(ell)) << s.to_string();
    EXPECT_TRUE(verify_family_membership(build_f_graph(s), ell, true));
  }
}

TEST(Params, PracticalAndStrict) {
  auto ps = ParamSet::practical(300, 0.1, 3, 0.05);
  EXPECT_TRUE(ps.violations().empty());
  EXPECT_EQ(ps.u_target(), 15u);
  EXPECT_EQ(ps.eps_target(), 2u);
  EXPECT_EQ(ps.tolerance(), 2u);
  ps.beta = 0.2;
  EXPECT_THROW(ps.validate(), std::invalid_argument);
  ParamSet strict = ParamSet::practical(1000, 0.1, 3, 0.05);
  strict.practical_mode = false;
  EXPECT_FALSE(strict.violations().empty());
  EXPECT_EQ(ParamSet::practical(1200, 0.1, 3, 0.05).tolerance(), 3u);
}
