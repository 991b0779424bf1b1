#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/rng.hpp"

namespace perturb {

// Isomorphism type of a graph made of disjoint cycles plus at most one path.
// Text form: "C5,C4;P2" (cycle lengths, then the path length in edges);
// "C3^20" repeats a cycle and is how runs of three or more are printed.
// "P0" is a lone vertex; a spec without ";P..." has no path component.
struct CycleTypeSpec {
  std::vector<std::size_t> cycle_lengths;  // kept in non-increasing order
  std::optional<std::size_t> path_length;  // edges

  std::size_t vertex_count() const;
  std::size_t min_cycle_length() const;  // 0 when there are no cycles

  /// Sorts cycle lengths into canonical (non-increasing) order.
  void normalize();

  /// All cycles at least `ell` long and the path (if any) at most ell-2 long.
  bool in_maximal_family(std::size_t ell) const;

  std::string to_string() const;
  static CycleTypeSpec parse(std::string_view text);

  friend bool operator==(const CycleTypeSpec&, const CycleTypeSpec&) = default;
};

/// Binomial random graph: every pair (u < v), in lexicographic order, is an
/// edge iff the next uniform01() draw is below p.
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);

/// Complete bipartite K_{a, n-a} with a = round(alpha * n) on vertices 0..a-1.
Graph make_bipartite_host(std::size_t n, double alpha);

/// A random graph with minimum degree at least ceil(alpha * n): G(n, alpha)
/// topped up with random edges at deficient vertices.
Graph make_random_dense_host(std::size_t n, double alpha, std::uint64_t seed);

/// True iff every degree is at least alpha * n.
bool min_degree_audit(const Graph& g, double alpha);

/// Disjoint cycles on consecutive ids, then the path.
Graph build_f_graph(const CycleTypeSpec& spec);

/// Every member of the maximal family on n vertices with girth >= ell, each
/// listed once, without-path specs first, then by path size.
std::vector<CycleTypeSpec> enumerate_specs(std::size_t n, std::size_t ell);

/// Adds edges to a graph of maximum degree <= 2 and girth >= ell until it is
/// edgewise maximal: every path is concatenated into one, which is closed into
/// a cycle when it has at least ell-1 edges. Cycles are left untouched.
Graph augment_to_maximal(const Graph& f, std::size_t ell);

/// Cycle type of a graph with maximum degree <= 2 and at most one path.
CycleTypeSpec spec_of(const Graph& f);

/// A random member of the maximal family (cycle lengths drawn log-uniformly).
CycleTypeSpec random_spec(std::size_t n, std::size_t ell, Rng& rng);

/// Girth of a max-degree-2 graph: its shortest cycle, or nullopt if acyclic.
std::optional<std::size_t> linear_girth(const Graph& f);

}  // namespace perturb
