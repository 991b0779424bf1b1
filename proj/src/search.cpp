#include "perturb/search.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "perturb/errors.hpp"

namespace perturb {

namespace {

// Path state shared by both searches: membership and free-neighbour counts.
struct Grower {
  const Graph& g;
  const std::vector<char>& allowed;
  std::vector<char> on_path;
  std::vector<std::uint32_t> free_deg;
  std::vector<Vertex> path;

  Grower(const Graph& graph, const std::vector<char>& allow)
      : g(graph), allowed(allow), on_path(graph.vertex_count(), 0),
        free_deg(graph.vertex_count(), 0) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!allowed[v]) continue;
      for (Vertex w : g.neighbors(v)) free_deg[v] += allowed[w] ? 1 : 0;
    }
  }

  bool free(Vertex v) const { return allowed[v] && !on_path[v]; }

  void push(Vertex v) {
    on_path[v] = 1;
    path.push_back(v);
    for (Vertex w : g.neighbors(v)) --free_deg[w];
  }

  void pop() {
    Vertex v = path.back();
    path.pop_back();
    on_path[v] = 0;
    for (Vertex w : g.neighbors(v)) ++free_deg[w];
  }

  void clear() {
    while (!path.empty()) pop();
  }

  // Free neighbour of `v` with the fewest free neighbours, ties broken at random.
  std::optional<Vertex> warnsdorff(Vertex v, Rng& rng) const {
    std::optional<Vertex> best;
    std::uint32_t best_deg = 0;
    std::uint64_t ties = 0;
    for (Vertex w : g.neighbors(v)) {
      if (!free(w)) continue;
      if (!best || free_deg[w] < best_deg) {
        best = w;
        best_deg = free_deg[w];
        ties = 1;
      } else if (free_deg[w] == best_deg && rng.below(++ties) == 0) {
        best = w;
      }
    }
    return best;
  }

  // Reverses the suffix after a random path-neighbour of the end vertex, with
  // the pivot at index >= min_pivot. Returns false when there is no pivot.
  bool rotate(Rng& rng, std::size_t min_pivot) {
    const std::size_t len = path.size();
    if (len < 3) return false;
    std::vector<std::size_t> pivots;
    const Vertex end = path.back();
    for (std::size_t i = min_pivot; i + 2 < len; ++i) {
      if (g.has_edge(path[i], end)) pivots.push_back(i);
    }
    if (pivots.empty()) return false;
    const std::size_t i = pivots[rng.below(pivots.size())];
    std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
    return true;
  }
};

// Depth-first search for a short cycle through `start`. Candidates are tried
// in increasing order of free degree (random tie-break), so cycles use up the
// poorly connected vertices first.
std::optional<std::vector<Vertex>> short_cycle_through(const Graph& g,
                                                       const std::vector<char>& allowed,
                                                       Vertex start, std::size_t k, Rng& rng,
                                                       std::uint64_t budget) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> free_deg(n, 0);
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  std::vector<Vertex> queue{start};
  dist[start] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (!allowed[y]) continue;
      if (dist[x] < 2) ++free_deg[y];
      if (dist[y] == std::numeric_limits<std::size_t>::max() && dist[x] + 1 < k) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  // free_deg is only needed near start; recompute exactly for reached vertices
  for (Vertex x : queue) {
    free_deg[x] = 0;
    for (Vertex y : g.neighbors(x)) free_deg[x] += allowed[y] ? 1 : 0;
  }

  std::vector<char> used(n, 0);
  std::vector<Vertex> path{start};
  used[start] = 1;
  std::uint64_t nodes = 0;
  auto candidates = [&]() {
    std::vector<Vertex> cand;
    const Vertex last = path.back();
    const std::size_t remaining = k - path.size();  // edges from the new vertex back to start
    for (Vertex y : g.neighbors(last)) {
      if (!allowed[y] || used[y] || dist[y] > remaining) continue;
      if (path.size() + 1 == k && !g.has_edge(y, start)) continue;
      cand.push_back(y);
    }
    rng.shuffle(cand);
    std::stable_sort(cand.begin(), cand.end(),
                     [&](Vertex a, Vertex b) { return free_deg[a] > free_deg[b]; });
    return cand;  // popped from the back: smallest free degree first
  };
  std::vector<std::vector<Vertex>> frames{candidates()};
  while (!frames.empty()) {
    if (++nodes > budget) return std::nullopt;
    auto& frame = frames.back();
    if (frame.empty()) {
      frames.pop_back();
      used[path.back()] = 0;
      path.pop_back();
      continue;
    }
    Vertex y = frame.back();
    frame.pop_back();
    path.push_back(y);
    used[y] = 1;
    if (path.size() == k) return path;
    frames.push_back(candidates());
  }
  return std::nullopt;
}

}  // namespace

std::vector<Vertex> find_long_path(const Graph& g, const VertexSet& avoid, std::size_t min_len,
                                   std::uint64_t seed, std::size_t restarts) {
  const std::size_t n = g.vertex_count();
  std::vector<char> allowed(n, 1);
  for (Vertex v : avoid) allowed.at(v) = 0;
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v) {
    if (allowed[v]) pool.push_back(v);
  }
  if (pool.empty() || min_len + 1 > pool.size()) {
    throw EmbeddingError(FailureKind::LongPathFailure,
                         "need " + std::to_string(min_len + 1) + " vertices, " +
                             std::to_string(pool.size()) + " available");
  }
  if (min_len == 0) return {pool.front()};

  Rng rng(seed);
  Grower grow(g, allowed);
  std::size_t best = 0;
  const std::size_t rotation_cap = 20 * pool.size() + 100;
  for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
    grow.clear();
    grow.push(pool[rng.below(pool.size())]);
    std::size_t rotations = 0;
    while (grow.path.size() < min_len + 1) {
      if (auto next = grow.warnsdorff(grow.path.back(), rng)) {
        grow.push(*next);
        continue;
      }
      if (grow.warnsdorff(grow.path.front(), rng)) {
        std::reverse(grow.path.begin(), grow.path.end());
        continue;
      }
      if (++rotations > rotation_cap || !grow.rotate(rng, 0)) break;
    }
    best = std::max(best, grow.path.size());
    if (grow.path.size() >= min_len + 1) return grow.path;
  }
  throw EmbeddingError(FailureKind::LongPathFailure,
                       "longest path found has " + std::to_string(best == 0 ? 0 : best - 1) +
                           " edges, need " + std::to_string(min_len));
}

std::optional<std::vector<Vertex>> find_cycle_through(const Graph& g,
                                                      const std::vector<char>& allowed,
                                                      Vertex start, std::size_t k, Rng& rng,
                                                      std::uint64_t budget) {
  if (k < 3) throw std::invalid_argument("find_cycle_through: k must be at least 3");
  if (!allowed[start]) return std::nullopt;
  if (k <= 8) return short_cycle_through(g, allowed, start, k, rng, budget);

  Grower grow(g, allowed);
  if (grow.free_deg[start] < 2) return std::nullopt;
  std::uint64_t steps = 0;
  while (steps < budget) {
    grow.clear();
    grow.push(start);
    // Grow to k vertices, rotating (never past the fixed start) when stuck.
    std::size_t stuck = 0;
    while (grow.path.size() < k && steps < budget) {
      ++steps;
      if (auto next = grow.warnsdorff(grow.path.back(), rng)) {
        grow.push(*next);
      } else if (++stuck > 4 * k || !grow.rotate(rng, 0)) {
        break;
      }
    }
    if (grow.path.size() < k) continue;
    // Close: look for a rotation or an end swap that lands next to start.
    for (std::size_t round = 0; round < 8 * k && steps < budget; ++round) {
      ++steps;
      const Vertex end = grow.path.back();
      if (g.has_edge(end, start)) return grow.path;
      const Vertex before = grow.path[grow.path.size() - 2];
      for (Vertex y : g.neighbors(before)) {
        if (grow.free(y) && g.has_edge(y, start)) {
          grow.pop();
          grow.push(y);
          return grow.path;
        }
      }
      for (std::size_t i = 1; i + 2 < grow.path.size(); ++i) {
        if (g.has_edge(grow.path[i], end) && g.has_edge(grow.path[i + 1], start)) {
          std::reverse(grow.path.begin() + static_cast<std::ptrdiff_t>(i) + 1, grow.path.end());
          return grow.path;
        }
      }
      // No direct closer: random rotation or random end swap.
      std::vector<Vertex> swaps;
      for (Vertex y : g.neighbors(before)) {
        if (grow.free(y)) swaps.push_back(y);
      }
      if (!swaps.empty() && rng.below(2) == 0) {
        grow.pop();
        grow.push(swaps[rng.below(swaps.size())]);
      } else if (!grow.rotate(rng, 0)) {
        if (swaps.empty()) break;
        grow.pop();
        grow.push(swaps[rng.below(swaps.size())]);
      }
    }
  }
  return std::nullopt;
}

}  // namespace perturb
