#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perturb {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected simple graph on vertices 0..n-1. Each neighborhood is kept as a
// sorted vector, so iteration is O(deg) and membership is a binary search.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }

  /// Inserts {u, v}. Returns false if the edge was already present.
  /// Throws std::invalid_argument on self-loops or out-of-range ids.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::size_t max_degree() const;
  std::size_t min_degree() const;

  /// All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  /// Structural audit: sorted unique neighborhoods, symmetry, no self-loops.
  bool audit() const;

  bool contains(Vertex v) const { return v < adj_.size(); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

/// Sorts, deduplicates and range-checks `members` against `g`.
VertexSet make_vertex_set(const Graph& g, std::vector<Vertex> members);

/// Boolean membership mask of length n.
std::vector<char> membership_mask(std::size_t n, std::span<const Vertex> members);

/// Edge-set union of two graphs on the same vertex count.
Graph graph_union(const Graph& g1, const Graph& g2);

/// BFS distance; std::nullopt when u and v lie in different components.
std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v);

/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source);

struct InducedSubgraph {
  Graph graph;
  /// Local id i corresponds to parent vertex to_parent[i].
  std::vector<Vertex> to_parent;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> members);

/// A connected component of a graph with maximum degree at most 2, listed in
/// walk order. For cycles, consecutive entries and (back, front) are adjacent.
struct LinearComponent {
  bool is_cycle = false;
  std::vector<Vertex> vertices;

  /// Number of edges.
  std::size_t length() const {
    return is_cycle ? vertices.size() : vertices.size() - 1;
  }
};

/// Components ordered by their smallest vertex. Throws std::invalid_argument
/// if some vertex has degree larger than 2.
std::vector<LinearComponent> linear_components(const Graph& g);

// Edge-list text format: "n m" followed by m lines "u v" with u < v.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// A few small named graphs used by tests and examples.
Graph make_complete(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_path(std::size_t vertices);

}  // namespace perturb
