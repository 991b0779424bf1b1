#include "perturb/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace perturb {

Graph::Graph(std::size_t vertex_count) : adj_(vertex_count) {}

void Graph::check_vertex(Vertex v) const {
  if (v >= adj_.size()) {
    throw std::invalid_argument("vertex " + std::to_string(v) +
                                " out of range for graph on " +
                                std::to_string(adj_.size()) + " vertices");
  }
}

namespace {

// Inserts into a sorted vector; appending is the common case while graphs are
// built in lexicographic edge order.
bool sorted_insert(std::vector<Vertex>& list, Vertex v) {
  if (list.empty() || list.back() < v) {
    list.push_back(v);
    return true;
  }
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it != list.end() && *it == v) return false;
  list.insert(it, v);
  return true;
}

}  // namespace

bool Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  }
  if (!sorted_insert(adj_[u], v)) return false;
  sorted_insert(adj_[v], u);
  ++edges_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  auto& nv = adj_[v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --edges_;
  return true;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= adj_.size() || v >= adj_.size()) return false;
  const auto& nu = adj_[u];
  const auto& nv = adj_[v];
  const auto& shorter = nu.size() <= nv.size() ? nu : nv;
  const Vertex target = nu.size() <= nv.size() ? v : u;
  return std::binary_search(shorter.begin(), shorter.end(), target);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& n : adj_) best = std::max(best, n.size());
  return best;
}

std::size_t Graph::min_degree() const {
  if (adj_.empty()) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& n : adj_) best = std::min(best, n.size());
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::audit() const {
  std::size_t half_edges = 0;
  for (Vertex u = 0; u < adj_.size(); ++u) {
    const auto& nu = adj_[u];
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu[i] >= adj_.size() || nu[i] == u) return false;
      if (i > 0 && nu[i - 1] >= nu[i]) return false;
      const auto& back = adj_[nu[i]];
      if (!std::binary_search(back.begin(), back.end(), u)) return false;
    }
    half_edges += nu.size();
  }
  return half_edges == 2 * edges_;
}

VertexSet make_vertex_set(const Graph& g, std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.back() >= g.vertex_count()) {
    throw std::invalid_argument("vertex set member " +
                                std::to_string(members.back()) +
                                " out of range");
  }
  return members;
}

std::vector<char> membership_mask(std::size_t n, std::span<const Vertex> members) {
  std::vector<char> mask(n, 0);
  for (Vertex v : members) {
    if (v >= n) throw std::invalid_argument("vertex set member out of range");
    mask[v] = 1;
  }
  return mask;
}

Graph graph_union(const Graph& g1, const Graph& g2) {
  if (g1.vertex_count() != g2.vertex_count()) {
    throw std::invalid_argument("graph_union: vertex counts differ (" +
                                std::to_string(g1.vertex_count()) + " vs " +
                                std::to_string(g2.vertex_count()) + ")");
  }
  Graph out(g1.vertex_count());
  // Merge per-vertex sorted lists, then replay in lexicographic order so every
  // insertion is an append.
  for (Vertex u = 0; u < g1.vertex_count(); ++u) {
    std::vector<Vertex> merged;
    auto a = g1.neighbors(u);
    auto b = g2.neighbors(u);
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(merged));
    for (Vertex v : merged) {
      if (u < v) out.add_edge(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  if (!g.contains(source)) throw std::invalid_argument("bfs source out of range");
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kInf) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v) {
  if (!g.contains(u) || !g.contains(v)) {
    throw std::invalid_argument("distance: vertex out of range");
  }
  auto dist = bfs_distances(g, u);
  if (dist[v] == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return dist[v];
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> members) {
  VertexSet sorted = make_vertex_set(g, {members.begin(), members.end()});
  std::vector<Vertex> local(g.vertex_count(), std::numeric_limits<Vertex>::max());
  for (Vertex i = 0; i < sorted.size(); ++i) local[sorted[i]] = i;
  InducedSubgraph out{Graph(sorted.size()), sorted};
  for (Vertex i = 0; i < sorted.size(); ++i) {
    for (Vertex y : g.neighbors(sorted[i])) {
      Vertex j = local[y];
      if (j != std::numeric_limits<Vertex>::max() && i < j) out.graph.add_edge(i, j);
    }
  }
  return out;
}

std::vector<LinearComponent> linear_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (g.max_degree() > 2) {
    throw std::invalid_argument("linear_components: maximum degree exceeds 2");
  }
  std::vector<char> seen(n, 0);
  std::vector<LinearComponent> out;

  auto walk = [&](Vertex start, bool is_cycle) {
    LinearComponent comp;
    comp.is_cycle = is_cycle;
    Vertex prev = std::numeric_limits<Vertex>::max();
    Vertex cur = start;
    while (true) {
      seen[cur] = 1;
      comp.vertices.push_back(cur);
      Vertex next = std::numeric_limits<Vertex>::max();
      for (Vertex y : g.neighbors(cur)) {
        if (y != prev && !seen[y]) {
          next = y;
          break;
        }
      }
      if (next == std::numeric_limits<Vertex>::max()) break;
      prev = cur;
      cur = next;
    }
    return comp;
  };

  // Paths start at their endpoints; everything left afterwards lies on cycles.
  for (Vertex v = 0; v < n; ++v) {
    if (!seen[v] && g.degree(v) <= 1) out.push_back(walk(v, false));
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!seen[v]) out.push_back(walk(v, true));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.vertices.begin(), a.vertices.end()) <
           *std::min_element(b.vertices.begin(), b.vertices.end());
  });
  return out;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw ParseError("edge list: missing header line");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) {
    throw ParseError("edge list: malformed header '" + line + "'");
  }
  Graph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) {
      throw ParseError("edge list: expected " + std::to_string(m) +
                       " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1, v = -1;
    std::string trailing;
    if (!(row >> u >> v) || (row >> trailing)) {
      throw ParseError("edge list: malformed edge line '" + line + "'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError("edge list: vertex out of range in '" + line + "'");
    }
    if (u == v) throw ParseError("edge list: self-loop in '" + line + "'");
    if (u > v) throw ParseError("edge list: expected u < v in '" + line + "'");
    if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      throw ParseError("edge list: duplicate edge '" + line + "'");
    }
  }
  if (next_line(line)) throw ParseError("edge list: trailing content '" + line + "'");
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph make_complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, static_cast<Vertex>((i + 1) % n));
  return g;
}

Graph make_path(std::size_t vertices) {
  Graph g(vertices);
  for (Vertex i = 0; i + 1 < vertices; ++i) g.add_edge(i, i + 1);
  return g;
}

}  // namespace perturb
