#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "perturb/counting.hpp"
#include "perturb/embedding.hpp"
#include "perturb/graph.hpp"
#include "perturb/params.hpp"

namespace perturb {

struct CenterChoice {
  std::vector<Vertex> centers;
  bool in_triangles = false;  // ell = 3: every center lies on a C3 (else none does)
};

/// How many pairwise-distance->=5 centers the components can host: a cycle of
/// length L gives max(1, floor(L/5)), a path with k edges ceil((k-1)/5).
/// For ell = 3 only the triangle components (triangles = true) or only the
/// others (false) are counted.
std::size_t center_capacity(const Graph& f, std::size_t ell, bool triangles);

/// t degree-2 vertices of f with pairwise distance >= 5, homogeneous with
/// respect to triangles when ell = 3. Throws EmbeddingError(CenterCapacity)
/// naming the achievable maximum when t is too large.
CenterChoice pick_centers(const Graph& f, std::size_t t, std::size_t ell, std::uint64_t seed);

// A copy of the cherry, C3 or C4 in the host. ring[0] and ring[1] are the
// center's neighbours; a C4 also has ring[2], adjacent to both of them.
struct CenteredCopy {
  Vertex center = 0;
  std::vector<Vertex> ring;
};

struct PlacementOptions {
  std::size_t retry_budget = 20;
  std::size_t audit_pairs = 50;
};

struct PlacementResult {
  std::vector<CenteredCopy> copies;
  std::size_t attempts = 0;
  /// Smallest audit count seen on the accepted placement.
  std::size_t audit_min = 0;
};

/// Copies of `shape` in g whose center sits in N_{g_alpha}(u) and whose two
/// center-neighbours sit in N_{g_alpha}(v).
std::size_t audit_copies(const std::vector<CenteredCopy>& copies, const Graph& g_alpha,
                         Vertex u, Vertex v);

/// t vertex-disjoint centered copies of `shape` in g, each drawn uniformly
/// from the copies disjoint from the earlier ones. The placement is audited
/// on random host pairs (u, v) and redrawn until audit_copies >= reservoir_target
/// for all of them. Throws EmbeddingError(PlacementFailure) when no copy
/// exists or the retry budget runs out.
PlacementResult place_centered_copies(const Graph& g, const Graph& g_alpha, Shape shape,
                                      std::size_t t, std::size_t reservoir_target,
                                      std::uint64_t seed, const PlacementOptions& options = {});

struct CoreResult {
  PartialEmbedding embedding;  // target = f_u, host = V(g)
  ReservoirIndex index;        // sampled pairs, sets with respect to f_u
  CenterChoice centers;
  Shape shape = Shape::Cherry;
  std::size_t placement_attempts = 0;
  /// Uncovered fourth vertices of C4 copies placed around longer cycles.
  VertexSet spare;
};

/// Embeds f_u (cycles plus at most one short path) into g ∪ g_alpha:
/// centered copies around round(beta*n) spread-out centers, whole short cycles
/// into g when ell <= 4, one seed vertex per untouched component, greedy
/// extension into g_alpha-neighbourhoods, then gaps of two closed by
/// g_alpha–g–g_alpha paths. Finishes with a reservoir audit against
/// params.reservoir_floor_count().
CoreResult embed_core(const Graph& f_u, const Graph& g, const Graph& g_alpha,
                      const ParamSet& params, std::uint64_t seed);

}  // namespace perturb
