#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/oracle.hpp"
#include "perturb/rng.hpp"

namespace perturb {

// Partial injective map from target vertices to host vertices, with its inverse.
class PartialEmbedding {
 public:
  static constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

  PartialEmbedding() = default;
  PartialEmbedding(std::size_t target_count, std::size_t host_count);

  std::size_t target_count() const { return forward_.size(); }
  std::size_t host_count() const { return inverse_.size(); }
  std::size_t size() const { return mapped_; }

  bool mapped(Vertex a) const { return forward_[a] != kNone; }
  bool covered(Vertex x) const { return inverse_[x] != kNone; }
  Vertex image(Vertex a) const { return forward_[a]; }
  Vertex preimage(Vertex x) const { return inverse_[x]; }

  /// Throws std::logic_error if `a` is already mapped or `x` already covered.
  void map(Vertex a, Vertex x);
  void unmap(Vertex a);
  /// Moves a mapped vertex to an uncovered host vertex.
  void relocate(Vertex a, Vertex x);

  /// Injective, inverse-consistent, and every target edge with both ends
  /// mapped lands on a host edge.
  bool is_valid(const Graph& target, const Graph& host) const;

  /// Mapped target vertices whose target-neighbours are not all mapped to
  /// host-neighbours of their image.
  std::vector<Vertex> broken_vertices(const Graph& target, const Graph& host,
                                      std::span<const Vertex> candidates) const;

  VertexSet image_set() const;
  VertexSet uncovered() const;
  /// Total map; throws std::logic_error unless every target vertex is mapped.
  Embedding to_embedding() const;

  friend bool operator==(const PartialEmbedding&, const PartialEmbedding&) = default;

 private:
  std::vector<Vertex> forward_;
  std::vector<Vertex> inverse_;
  std::size_t mapped_ = 0;
};

/// Host images of the embedded target-neighbours of the vertex sitting at `w`
/// (empty when w is uncovered).
VertexSet embedded_neighborhood(const PartialEmbedding& emb, const Graph& target, Vertex w);

/// B(v): covered w whose embedded neighbourhood lies inside N_h(v).
VertexSet reservoir_set(const PartialEmbedding& emb, const Graph& target, const Graph& h,
                        Vertex v);

/// B(u, v) = B(v) ∩ N_h(u). Throws std::invalid_argument when u == v.
VertexSet reservoir_set(const PartialEmbedding& emb, const Graph& target, const Graph& h,
                        Vertex u, Vertex v);

// Reservoir sets for a fixed sample of host pairs, recomputed on demand.
class ReservoirIndex {
 public:
  void track(Vertex u, Vertex v);
  /// Adds `count` uniformly random ordered pairs u != v.
  void sample_pairs(std::size_t host_count, std::size_t count, Rng& rng);

  /// Recomputes every tracked set and returns the largest drop in |B(u,v)|
  /// since the previous refresh (0 on the first one).
  std::size_t refresh(const PartialEmbedding& emb, const Graph& target, const Graph& h);

  const std::vector<std::pair<Vertex, Vertex>>& pairs() const { return pairs_; }
  const VertexSet& set(std::size_t i) const { return sets_[i]; }
  std::size_t min_size() const;
  std::size_t worst_decrement() const { return worst_decrement_; }

 private:
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  std::vector<VertexSet> sets_;
  bool fresh_ = false;
  std::size_t worst_decrement_ = 0;
};

}  // namespace perturb
