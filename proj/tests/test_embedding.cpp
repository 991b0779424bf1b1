#include <gtest/gtest.h>

#include "perturb/embedding.hpp"
#include "perturb/instance.hpp"

using namespace perturb;

namespace {

// B(u,v) straight from the three membership conditions.
VertexSet naive_reservoir(const PartialEmbedding& emb, const Graph& target, const Graph& h,
                          Vertex u, Vertex v) {
  VertexSet out;
  for (Vertex w = 0; w < h.vertex_count(); ++w) {
    if (!emb.covered(w) || !h.has_edge(u, w)) continue;
    bool ok = true;
    for (Vertex b : target.neighbors(emb.preimage(w))) {
      if (emb.mapped(b) && !h.has_edge(v, emb.image(b))) ok = false;
    }
    if (ok) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST(PartialEmbedding, MapUnmapRelocate) {
  PartialEmbedding e(3, 5);
  e.map(0, 4);
  e.map(1, 2);
  EXPECT_EQ(e.size(), 2u);
  EXPECT_TRUE(e.covered(4));
  EXPECT_EQ(e.preimage(2), 1u);
  EXPECT_THROW(e.map(2, 4), std::logic_error);
  EXPECT_THROW(e.map(0, 3), std::logic_error);
  e.relocate(0, 3);
  EXPECT_FALSE(e.covered(4));
  EXPECT_EQ(e.image(0), 3u);
  e.unmap(1);
  EXPECT_EQ(e.size(), 1u);
  EXPECT_EQ(e.uncovered(), (VertexSet{0, 1, 2, 4}));
  EXPECT_THROW((void)e.to_embedding(), std::logic_error);
}

TEST(PartialEmbedding, Validity) {
  Graph target = make_path(3);
  Graph host = make_path(4);
  PartialEmbedding e(3, 4);
  e.map(0, 0);
  e.map(1, 1);
  EXPECT_TRUE(e.is_valid(target, host));
  e.map(2, 3);
  EXPECT_FALSE(e.is_valid(target, host));
  std::vector<Vertex> all{0, 1, 2};
  EXPECT_EQ(e.broken_vertices(target, host, all), (std::vector<Vertex>{1, 2}));
  e.relocate(2, 2);
  EXPECT_TRUE(e.is_valid(target, host));
  EXPECT_EQ(e.to_embedding(), (Embedding{0, 1, 2}));
}

TEST(Reservoir, EmptyEmbedding) {
  Graph h = make_complete(6);
  PartialEmbedding e(4, 6);
  Graph target = make_cycle(4);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = 0; v < 6; ++v)
      if (u != v) EXPECT_TRUE(reservoir_set(e, target, h, u, v).empty());
  EXPECT_THROW(reservoir_set(e, target, h, 1, 1), std::invalid_argument);
}

TEST(Reservoir, SingleEdgeInK5) {
  Graph h = make_complete(5);
  Graph target = make_path(2);
  PartialEmbedding e(2, 5);
  e.map(0, 1);
  e.map(1, 3);
  for (Vertex u = 0; u < 5; ++u) {
    for (Vertex v = 0; v < 5; ++v) {
      if (u == v) continue;
      VertexSet expect;
      // w is in B(v) unless its partner's image is v itself.
      for (Vertex w : {1u, 3u}) {
        Vertex partner = w == 1 ? 3 : 1;
        if (w != u && partner != v) expect.push_back(w);
      }
      EXPECT_EQ(reservoir_set(e, target, h, u, v), expect) << u << "," << v;
    }
  }
}

TEST(Reservoir, MatchesNaiveFilter) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 10 + rng.below(41);
    Graph h = sample_gnp(n, 0.3 + 0.5 * rng.uniform01(), derive_seed(trial, 1));
    CycleTypeSpec spec = random_spec(n / 2, 3, rng);
    Graph target = build_f_graph(spec);
    PartialEmbedding e(target.vertex_count(), n);
    std::vector<Vertex> hosts(n);
    for (Vertex x = 0; x < n; ++x) hosts[x] = x;
    rng.shuffle(hosts);
    for (Vertex a = 0; a < target.vertex_count(); ++a)
      if (rng.uniform01() < 0.7) e.map(a, hosts[a]);
    for (int q = 0; q < 20; ++q) {
      Vertex u = static_cast<Vertex>(rng.below(n));
      Vertex v = static_cast<Vertex>(rng.below(n - 1));
      if (v >= u) ++v;
      EXPECT_EQ(reservoir_set(e, target, h, u, v), naive_reservoir(e, target, h, u, v));
    }
  }
}

TEST(ReservoirIndex, TracksDrops) {
  Graph h = make_complete(6);
  Graph target = make_path(3);
  PartialEmbedding e(3, 6);
  e.map(0, 0);
  e.map(1, 1);
  ReservoirIndex idx;
  idx.track(5, 4);
  EXPECT_EQ(idx.refresh(e, target, h), 0u);
  EXPECT_EQ(idx.set(0), (VertexSet{0, 1}));
  e.unmap(0);
  EXPECT_EQ(idx.refresh(e, target, h), 1u);
  EXPECT_EQ(idx.min_size(), 1u);
  EXPECT_EQ(idx.worst_decrement(), 1u);
}

TEST(ReservoirIndex, SamplePairsDistinct) {
  ReservoirIndex idx;
  Rng rng(3);
  idx.sample_pairs(10, 100, rng);
  ASSERT_EQ(idx.pairs().size(), 100u);
  for (auto [u, v] : idx.pairs()) {
    EXPECT_NE(u, v);
    EXPECT_LT(u, 10u);
    EXPECT_LT(v, 10u);
  }
}
