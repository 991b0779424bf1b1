#include <gtest/gtest.h>

#include <set>

#include "perturb/errors.hpp"
#include "perturb/instance.hpp"
#include "perturb/oracle.hpp"
#include "perturb/reservoir.hpp"

using namespace perturb;

namespace {

void expect_spread(const Graph& f, const std::vector<Vertex>& centers) {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    EXPECT_EQ(f.degree(centers[i]), 2u);
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      auto d = distance(f, centers[i], centers[j]);
      if (d) EXPECT_GE(*d, 5u);
    }
  }
}

void expect_disjoint_copies(const Graph& g, const std::vector<CenteredCopy>& copies,
                            Shape shape) {
  std::set<Vertex> used;
  for (const auto& c : copies) {
    EXPECT_TRUE(used.insert(c.center).second);
    for (Vertex r : c.ring) EXPECT_TRUE(used.insert(r).second);
    ASSERT_GE(c.ring.size(), 2u);
    EXPECT_TRUE(g.has_edge(c.center, c.ring[0]));
    EXPECT_TRUE(g.has_edge(c.center, c.ring[1]));
    if (shape == Shape::C3) EXPECT_TRUE(g.has_edge(c.ring[0], c.ring[1]));
    if (shape == Shape::C4) {
      ASSERT_EQ(c.ring.size(), 3u);
      EXPECT_TRUE(g.has_edge(c.ring[2], c.ring[0]));
      EXPECT_TRUE(g.has_edge(c.ring[2], c.ring[1]));
    }
  }
}

CycleTypeSpec cycles(std::vector<std::size_t> lengths) {
  CycleTypeSpec s;
  s.cycle_lengths = std::move(lengths);
  s.normalize();
  return s;
}

}  // namespace

TEST(PickCenters, AntipodalOnC10) {
  Graph f = make_cycle(10);
  auto c = pick_centers(f, 2, 5, 1);
  ASSERT_EQ(c.centers.size(), 2u);
  EXPECT_EQ(*distance(f, c.centers[0], c.centers[1]), 5u);
}

TEST(PickCenters, OnePerTriangle) {
  Graph f = build_f_graph(cycles({3, 3, 3, 3}));
  auto c = pick_centers(f, 4, 3, 9);
  ASSERT_EQ(c.centers.size(), 4u);
  EXPECT_TRUE(c.in_triangles);
  std::set<Vertex> comps;
  for (Vertex v : c.centers) comps.insert(v / 3);
  EXPECT_EQ(comps.size(), 4u);
}

TEST(PickCenters, MixedSidesCapacityError) {
  Graph f = build_f_graph(cycles({7, 3}));
  EXPECT_EQ(center_capacity(f, 3, true), 1u);
  EXPECT_EQ(center_capacity(f, 3, false), 1u);
  try {
    pick_centers(f, 2, 3, 0);
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::CenterCapacity);
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(PickCenters, RandomSpecsSpread) {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    std::size_t ell = 3 + rng.below(4);
    auto spec = random_spec(20 + rng.below(80), ell, rng);
    Graph f = build_f_graph(spec);
    std::size_t cap = std::max(center_capacity(f, ell, true), center_capacity(f, ell, false));
    if (ell > 3) cap = center_capacity(f, ell, false);
    if (cap == 0) continue;
    auto c = pick_centers(f, cap, ell, derive_seed(i, 2));
    EXPECT_EQ(c.centers.size(), cap);
    expect_spread(f, c.centers);
    if (ell == 3) {
      for (Vertex v : c.centers) {
        bool on_triangle = false;
        for (Vertex a : f.neighbors(v))
          for (Vertex b : f.neighbors(v))
            if (a < b && f.has_edge(a, b)) on_triangle = true;
        EXPECT_EQ(on_triangle, c.in_triangles);
      }
    }
  }
}

TEST(PlaceCopies, CompleteHost) {
  Graph k = make_complete(30);
  for (Shape s : {Shape::Cherry, Shape::C3, Shape::C4}) {
    // Only the copies holding u or v miss out.
    auto r = place_centered_copies(k, k, s, 5, 3, 3);
    EXPECT_EQ(r.copies.size(), 5u);
    EXPECT_EQ(r.attempts, 1u);
    expect_disjoint_copies(k, r.copies, s);
  }
}

TEST(PlaceCopies, EmptyHostFails) {
  Graph g(40);
  Graph ga = make_bipartite_host(40, 0.5);
  try {
    place_centered_copies(g, ga, Shape::Cherry, 3, 0, 1);
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::PlacementFailure);
  }
}

TEST(PlaceCopies, RandomHostAudit) {
  Graph g = sample_gnp(600, 0.2, 17);
  // Lopsided K_{60,540}: pairs on the large side see only the 60 small-side
  // vertices, so a zero target is all that holds for every sampled pair.
  auto r = place_centered_copies(g, make_bipartite_host(600, 0.1), Shape::Cherry, 30, 0, 5);
  EXPECT_EQ(r.copies.size(), 30u);
  expect_disjoint_copies(g, r.copies, Shape::Cherry);
  auto r2 = place_centered_copies(g, make_bipartite_host(600, 0.5), Shape::Cherry, 30, 1, 5);
  EXPECT_GE(r2.audit_min, 1u);
  EXPECT_LE(r2.attempts, 20u);
  expect_disjoint_copies(g, r2.copies, Shape::Cherry);
}

TEST(PlaceCopies, UnreachableTargetFails) {
  Graph g = sample_gnp(200, 0.2, 2);
  try {
    place_centered_copies(g, make_bipartite_host(200, 0.1), Shape::Cherry, 10, 50, 5,
                          {.retry_budget = 3, .audit_pairs = 10});
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.kind(), FailureKind::PlacementFailure);
  }
}

TEST(EmbedCore, TrianglesInCompleteHost) {
  Graph k = make_complete(60);
  Graph f = build_f_graph(cycles(std::vector<std::size_t>(10, 3)));
  auto ps = ParamSet::practical(60, 0.5, 3, 1.0);
  auto core = embed_core(f, k, k, ps, 4);
  EXPECT_EQ(core.embedding.size(), 30u);
  EXPECT_TRUE(core.embedding.is_valid(f, k));
  for (Vertex u = 0; u < 60; u += 7)
    for (Vertex v = 1; v < 60; v += 11)
      // Loses u itself and the two triangle-mates of whatever sits at v.
      if (u != v) EXPECT_GE(reservoir_set(core.embedding, f, k, u, v).size(), 27u);
}

TEST(EmbedCore, LongCycleRandomHost) {
  Graph f = make_cycle(30);
  int ok = 0;
  for (int s = 0; s < 5; ++s) {
    Graph g = sample_gnp(600, 0.15, derive_seed(s, 1));
    Graph ga = make_bipartite_host(600, 0.2);
    auto ps = ParamSet::practical(600, 0.2, 3, 0.15);
    auto core = embed_core(f, g, ga, ps, s);
    Graph h = graph_union(g, ga);
    auto rep = verify_embedding(f, h, core.embedding.to_embedding(), false);
    ok += rep.valid;
    EXPECT_GE(core.index.min_size(), ps.reservoir_floor_count());
  }
  EXPECT_EQ(ok, 5);
}

TEST(EmbedCore, ShortCyclesWithSpare) {
  // ell = 4 puts C4 copies around the centers; C5s leave no spare, but
  // whole C4 components go into g.
  Graph f = build_f_graph(cycles({5, 4, 4, 9}));
  Graph g = sample_gnp(200, 0.4, 8);
  Graph ga = make_bipartite_host(200, 0.3);
  auto ps = ParamSet::practical(200, 0.3, 4, 0.4);
  auto core = embed_core(f, g, ga, ps, 1);
  EXPECT_EQ(core.shape, Shape::C4);
  EXPECT_TRUE(core.embedding.is_valid(f, graph_union(g, ga)));
  EXPECT_EQ(core.embedding.size(), f.vertex_count());
  for (Vertex x : core.spare) EXPECT_FALSE(core.embedding.covered(x));
}

TEST(EmbedCore, EmptyHostsFail) {
  Graph f = make_cycle(10);
  Graph empty(100);
  auto ps = ParamSet::practical(100, 0.2, 3, 0.0);
  EXPECT_THROW(embed_core(f, empty, empty, ps, 1), EmbeddingError);
}
