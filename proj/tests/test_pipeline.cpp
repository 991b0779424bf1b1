#include <gtest/gtest.h>

#include "perturb/instance.hpp"
#include "perturb/pipeline.hpp"

using namespace perturb;

namespace {

CycleTypeSpec spec_of_text(const char* s) { return CycleTypeSpec::parse(s); }

Decomposition split(std::size_t n, VertexSet u, VertexSet w) {
  Decomposition d;
  d.vertex_count = n;
  d.u_set = std::move(u);
  d.w_set = std::move(w);
  return d;
}

// F = C10; 4-5 is the increment, anchored at 3 and 6; the rest sits on
// hosts 0..7 of K10 in cycle order.
struct PairFixture {
  Graph target = make_cycle(10);
  PartialEmbedding emb{10, 10};
  PairFixture() {
    Vertex host = 0;
    for (Vertex a : {6u, 7u, 8u, 9u, 0u, 1u, 2u, 3u}) emb.map(a, host++);
  }
};

}  // namespace

TEST(Middle, PathsInComplete) {
  // P5 ∪ P3: two path components with 4 and 2 edges.
  Graph two(8);
  for (Vertex v = 0; v < 4; ++v) two.add_edge(v, v + 1);
  two.add_edge(5, 6);
  two.add_edge(6, 7);
  Graph k = make_complete(20);
  auto ps = ParamSet::practical(20, 0.5, 3, 1.0);
  auto e = embed_middle(two, k, {}, ps, 3);
  EXPECT_EQ(e.size(), 8u);
  EXPECT_TRUE(e.is_valid(two, k));
}

TEST(Middle, ShortCyclesInComplete) {
  Graph f = build_f_graph(spec_of_text("C5,C4"));
  Graph k = make_complete(20);
  auto ps = ParamSet::practical(20, 0.5, 4, 1.0);
  auto e = embed_middle(f, k, {}, ps, 3);
  EXPECT_EQ(e.size(), 9u);
  EXPECT_TRUE(e.is_valid(f, k));
}

TEST(Middle, RandomHostWithOccupied) {
  Graph f = build_f_graph(spec_of_text("C4,C4,C4;P50"));
  VertexSet occ;
  for (Vertex v = 0; v < 30; ++v) occ.push_back(v);
  int ok = 0;
  for (int s = 0; s < 10; ++s) {
    Graph g = sample_gnp(200, 0.3, derive_seed(s, 1));
    auto ps = ParamSet::practical(200, 0.3, 3, 0.3);
    auto e = embed_middle(f, g, occ, ps, s);
    ok += e.is_valid(f, g) && e.size() == f.vertex_count();
    for (Vertex v : occ) EXPECT_FALSE(e.covered(v));
  }
  EXPECT_EQ(ok, 10);
}

TEST(Middle, NoRoomFails) {
  Graph f = build_f_graph(spec_of_text("C5"));
  Graph g = make_bipartite_host(20, 0.5);
  auto ps = ParamSet::practical(20, 0.5, 3, 1.0);
  try {
    embed_middle(f, g, {}, ps, 1);
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::CycleSearchFailure);
  }
}

TEST(SwitchPlan, AnchoredPair) {
  Graph f = make_cycle(10);
  VertexSet w{0, 1, 2, 3, 6, 7, 8, 9};
  auto plan = build_switch_plan(f, split(10, w, w), 5);
  ASSERT_EQ(plan.increments.size(), 1u);
  const auto& inc = plan.increments[0];
  EXPECT_EQ(inc.kind, IncrementKind::Pair);
  EXPECT_EQ(inc.vertices, (std::vector<Vertex>{4, 5}));
  EXPECT_EQ(inc.anchors[0], std::optional<Vertex>(3));
  EXPECT_EQ(inc.anchors[1], std::optional<Vertex>(6));
  EXPECT_EQ(plan.t_prime, 1u);
}

TEST(SwitchPlan, TrianglesLast) {
  Graph f = build_f_graph(spec_of_text("C3,C3,C3;P1"));
  VertexSet w{0, 1, 2};
  auto plan = build_switch_plan(f, split(11, w, w), 3);
  ASSERT_EQ(plan.increments.size(), 3u);
  EXPECT_EQ(plan.t_prime, 1u);
  EXPECT_EQ(plan.increments[0].kind, IncrementKind::Pair);
  EXPECT_FALSE(plan.increments[0].anchors[0]);
  EXPECT_FALSE(plan.increments[0].anchors[1]);
  EXPECT_EQ(plan.increments[1].kind, IncrementKind::Triangle);
  EXPECT_EQ(plan.increments[2].kind, IncrementKind::Triangle);
}

TEST(SwitchPlan, Violations) {
  Graph f = make_cycle(10);
  VertexSet w{0, 1, 2, 3, 4, 5, 6};
  EXPECT_THROW(build_switch_plan(f, split(10, w, w), 3), std::invalid_argument);
  Graph tri = build_f_graph(spec_of_text("C3,C4"));
  VertexSet w2{3, 4, 5, 6};
  EXPECT_THROW(build_switch_plan(tri, split(7, w2, w2), 4), std::invalid_argument);
}

TEST(SwitchPlan, CountRange) {
  EXPECT_TRUE(switch_count_in_range(2, 6));
  EXPECT_TRUE(switch_count_in_range(3, 6));
  EXPECT_TRUE(switch_count_in_range(4, 6));
  EXPECT_FALSE(switch_count_in_range(5, 6));
  EXPECT_FALSE(switch_count_in_range(0, 6));
}

TEST(Switch, PairInComplete) {
  Graph k = make_complete(10);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PairFixture fx;
    ReservoirIndex idx;
    idx.track(0, 8);
    idx.refresh(fx.emb, fx.target, k);
    SwitchContext ctx{fx.target, k, k, 0};
    Increment inc{IncrementKind::Pair, {4, 5}, {Vertex{3}, Vertex{6}}};
    auto audit = switch_insert_pair(fx.emb, idx, ctx, inc, seed);
    EXPECT_TRUE(audit.valid);
    EXPECT_LE(audit.changed, 10u);
    EXPECT_EQ(fx.emb.size(), 10u);
    EXPECT_TRUE(fx.emb.is_valid(fx.target, k));
  }
}

TEST(Switch, UnderflowLeavesStateAlone) {
  Graph k = make_complete(10);
  PairFixture fx;
  const PartialEmbedding before = fx.emb;
  ReservoirIndex idx;
  SwitchContext ctx{fx.target, k, k, 100};
  Increment inc{IncrementKind::Pair, {4, 5}, {Vertex{3}, Vertex{6}}};
  try {
    switch_insert_pair(fx.emb, idx, ctx, inc, 1);
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::ReservoirUnderflow);
  }
  EXPECT_EQ(fx.emb, before);
}

TEST(Switch, TriangleInComplete) {
  Graph k = make_complete(12);
  Graph f = build_f_graph(spec_of_text("C3,C3,C3,C3"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PartialEmbedding emb(12, 12);
    for (Vertex a = 0; a < 9; ++a) emb.map(a, a);
    ReservoirIndex idx;
    SwitchContext ctx{f, k, k, 0};
    Increment inc{IncrementKind::Triangle, {9, 10, 11}, {}};
    auto audit = switch_insert_triangle(emb, idx, ctx, inc, seed);
    EXPECT_TRUE(audit.valid);
    EXPECT_LE(audit.changed, 9u);
    EXPECT_TRUE(emb.is_valid(f, k));
    EXPECT_EQ(emb.size(), 12u);
  }
}

TEST(Switch, BipartiteGHasNoTriangle) {
  Graph k = make_complete(12);
  Graph g = make_bipartite_host(12, 0.5);
  Graph f = build_f_graph(spec_of_text("C3,C3,C3,C3"));
  PartialEmbedding emb(12, 12);
  for (Vertex a = 0; a < 9; ++a) emb.map(a, a);
  const PartialEmbedding before = emb;
  ReservoirIndex idx;
  SwitchContext ctx{f, k, g, 0};
  Increment inc{IncrementKind::Triangle, {9, 10, 11}, {}};
  try {
    switch_insert_triangle(emb, idx, ctx, inc, 2);
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::NoRainbowTriangle);
  }
  EXPECT_EQ(emb, before);
}

TEST(EmbedFull, HamiltonCycleInComplete) {
  Graph f = make_cycle(60);
  Graph k = make_complete(60);
  auto ps = ParamSet::practical(60, 0.5, 3, 1.0);
  auto r = embed_full(f, k, k, ps, 1);
  ASSERT_TRUE(r.success) << r.failure->to_text();
  EXPECT_TRUE(verify_embedding(f, k, r.embedding, true).valid);
}

TEST(EmbedFull, TriangleFactorDesk) {
  CycleTypeSpec spec;
  spec.cycle_lengths.assign(20, 3);
  Graph f = build_f_graph(spec);
  Graph ga = make_bipartite_host(60, 0.3);
  auto ps = ParamSet::practical(60, 0.3, 3, 0.5);
  int ok = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Graph g = sample_gnp(60, 0.5, derive_seed(s, 1));
    auto r = embed_full(f, g, ga, ps, derive_seed(s, 2));
    if (!r.success) continue;
    ++ok;
    EXPECT_TRUE(verify_embedding(f, graph_union(g, ga), r.embedding, true).valid);
    for (const auto& a : r.audits) {
      EXPECT_TRUE(a.valid);
      EXPECT_LE(a.changed, a.kind == IncrementKind::Pair ? 10u : 9u);
    }
  }
  EXPECT_GE(ok, 45);
}

TEST(EmbedFull, TriangleFreeHostFails) {
  CycleTypeSpec spec;
  spec.cycle_lengths.assign(10, 3);
  Graph f = build_f_graph(spec);
  Graph ga = make_bipartite_host(30, 0.3);
  auto ps = ParamSet::practical(30, 0.3, 3, 0.0);
  ps.retry_budget = 3;
  auto r = embed_full(f, Graph(30), ga, ps, 1);
  EXPECT_FALSE(r.success);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.attempts, 3u);
  EXPECT_NE(r.failure->to_text().find("stage="), std::string::npos);
}

TEST(EmbedFull, BadInput) {
  Graph k = make_complete(10);
  auto ps = ParamSet::practical(10, 0.5, 3, 1.0);
  EXPECT_THROW(embed_full(make_cycle(9), k, k, ps, 1), std::invalid_argument);
  Graph star(10);
  for (Vertex v = 1; v < 10; ++v) star.add_edge(0, v);
  EXPECT_THROW(embed_full(star, k, k, ps, 1), std::invalid_argument);
}

TEST(EmbedFull, Deterministic) {
  Graph f = build_f_graph(CycleTypeSpec::parse("C7,C5,C4,C4;P1"));
  Graph g = sample_gnp(22, 0.6, 4);
  Graph ga = make_bipartite_host(22, 0.4);
  auto ps = ParamSet::practical(22, 0.4, 4, 0.6);
  auto a = embed_full(f, g, ga, ps, 99);
  auto b = embed_full(f, g, ga, ps, 99);
  EXPECT_EQ(a.success, b.success);
  EXPECT_EQ(a.embedding, b.embedding);
  EXPECT_EQ(a.attempts, b.attempts);
}
