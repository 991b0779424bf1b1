#pragma once

#include <cstddef>
#include <string>

#include "perturb/graph.hpp"
#include "perturb/params.hpp"

namespace perturb {

// Vertex split U ⊆ W ⊆ V(F) of a maximal max-degree-2 target:
//   F[W \ U] holds only cycles shorter than ell0 and paths,
//   F[V \ W] holds only isolated edges and triangles,
//   no F-edges join U to W \ U and at most two join U to V \ W.
struct Decomposition {
  std::size_t vertex_count = 0;
  VertexSet u_set;
  VertexSet w_set;
  std::size_t tolerance = 2;
  /// Consecutive vertices cut from the last cycle added to U: 0, 2, or >= 5.
  std::size_t trimmed_run = 0;

  VertexSet w_minus_u() const;
  VertexSet v_minus_w() const;

  /// {"u":[...],"w_minus_u":[...],"v_minus_w":[...],"tolerance":t}
  std::string to_json() const;
};

struct DecomposeOptions {
  /// When round(u_fraction*beta*n) < 3, return U = ∅ instead of failing.
  bool allow_empty_core = false;
  /// Accept whatever |V \ W| the greedy reaches instead of failing when it
  /// misses round(epsilon*n) by more than the tolerance.
  bool relax_out_size = false;
};

/// Greedy split: whole cycles go to U in non-increasing length order until
/// |U| reaches its target, and the last one is trimmed by a run of 2 or >= 5
/// consecutive vertices. The cut run's end pairs leave W. Then cycles of length
/// >= ell0 left in W \ U lose two adjacent vertices, triangles and finally
/// isolated edges (cycles first, then the path) move out of W until
/// |V \ W| meets its target.
///
/// Throws std::invalid_argument when f is not maximal for params.ell or sizes
/// disagree, and EmbeddingError(InfeasibleDecomposition) when a size target
/// cannot be met at this n.
Decomposition decompose(const Graph& f, const ParamSet& params,
                        const DecomposeOptions& options = {});

struct PartitionProps {
  bool p1 = false;  // W \ U: short cycles and paths only
  bool p2 = false;  // V \ W: isolated edges and triangles only
  bool p3 = false;  // no U–(W\U) edges, at most two U–(V\W) edges
  bool all() const { return p1 && p2 && p3; }
};

PartitionProps check_partition_props(const Graph& f, const Decomposition& d,
                                     std::size_t ell0);

/// Edges of F[U], F[W\U], F[V\W] and the three crossing classes add up to E(F).
bool edge_partition_audit(const Graph& f, const Decomposition& d);

}  // namespace perturb
