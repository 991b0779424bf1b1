#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/params.hpp"
#include "perturb/rng.hpp"

namespace perturb {

// Copy counts saturate at UINT64_MAX instead of wrapping.
using Count = std::uint64_t;

/// Edges with one end in v1 and the other in v2. The sets must be disjoint.
Count count_edges_between(const Graph& g, std::span<const Vertex> v1,
                          std::span<const Vertex> v2);

/// Cherries b-a-c with centre a in v1, b in v2, c in v3 (sets pairwise disjoint).
Count count_cherries(const Graph& g, std::span<const Vertex> v1,
                     std::span<const Vertex> v2, std::span<const Vertex> v3);

/// Cycles v_1..v_k with v_i in parts[i], counted once for the given part order.
/// Exact for every k: the count is propagated part by part from each start in
/// parts[0], which is a walk count that equals the cycle count because the
/// parts are disjoint.
Count count_cycles_rainbow(const Graph& g, const std::vector<VertexSet>& parts);

enum class Shape { Cherry, C3, C4 };

/// Unlabelled copies of the shape in g.
Count count_global(const Graph& g, Shape shape);

/// First-witness search for a cycle v_1..v_k with v_i in parts[i] and all v_i
/// distinct. Parts may overlap (distinctness is enforced during the search).
/// Depth-first over parts with a BFS distance bound back to the start vertex.
/// Returns std::nullopt when no cycle exists or `node_budget` DFS nodes were
/// expanded without finding one.
std::optional<std::vector<Vertex>> find_rainbow_cycle(const Graph& g,
                                                      const std::vector<VertexSet>& parts,
                                                      Rng& rng,
                                                      std::uint64_t node_budget = 2'000'000);

struct CountReport {
  std::string property;  // A1, A2, A3, A2-global, A3-global
  std::size_t k = 0;     // cycle length for A3 rows, 2/3 for edges/cherries
  std::vector<std::size_t> sizes;
  Count observed = 0;
  double bound = 0.0;
  bool upper_bound = false;  // true: pass iff observed <= bound
  bool pass = false;
  std::string note;  // set when a condition could not be sampled at this n
};

struct CertifyOptions {
  /// Largest k checked for A3; 0 means every k in [ell, ell0).
  std::size_t max_cycle_length = 0;
};

/// Samples `samples` disjoint tuples for each of A1, A2 and A3 (every
/// ell <= k < ell0) at the smallest sizes the conditions quantify over
/// (ceil(n/ell0) and ceil(n/ell0^2)), plus the global upper bounds on cherries,
/// triangles and 4-cycles.
std::vector<CountReport> certify_pseudorandom(const Graph& g, const ParamSet& params,
                                              std::size_t samples, std::uint64_t seed,
                                              const CertifyOptions& options = {});

/// CSV with header property,k,sizes,observed,bound,pass.
void write_reports_csv(std::ostream& out, const std::vector<CountReport>& reports);

}  // namespace perturb
