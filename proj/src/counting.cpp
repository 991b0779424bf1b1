#include "perturb/counting.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace perturb {

namespace {

constexpr Count kMax = std::numeric_limits<Count>::max();

Count sat_add(Count a, Count b) { return a > kMax - b ? kMax : a + b; }

Count sat_mul(Count a, Count b) {
  Count out;
  return __builtin_mul_overflow(a, b, &out) ? kMax : out;
}

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// part_of[v] = index of the part containing v, or kNone. Throws when parts
// overlap or leave the vertex range.
std::vector<std::uint32_t> part_index(const Graph& g,
                                      std::span<const std::span<const Vertex>> parts) {
  std::vector<std::uint32_t> part_of(g.vertex_count(), kNone);
  for (std::uint32_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) {
      if (v >= g.vertex_count()) throw std::invalid_argument("vertex set member out of range");
      if (part_of[v] != kNone) {
        if (part_of[v] == i) continue;
        throw std::invalid_argument("vertex sets overlap at vertex " + std::to_string(v));
      }
      part_of[v] = i;
    }
  }
  return part_of;
}

}  // namespace

Count count_edges_between(const Graph& g, std::span<const Vertex> v1,
                          std::span<const Vertex> v2) {
  std::span<const Vertex> parts[] = {v1, v2};
  auto part_of = part_index(g, parts);
  std::vector<char> seen(g.vertex_count(), 0);
  Count total = 0;
  for (Vertex a : v1) {
    if (seen[a]) continue;
    seen[a] = 1;
    for (Vertex b : g.neighbors(a)) total += part_of[b] == 1;
  }
  return total;
}

Count count_cherries(const Graph& g, std::span<const Vertex> v1,
                     std::span<const Vertex> v2, std::span<const Vertex> v3) {
  std::span<const Vertex> parts[] = {v1, v2, v3};
  auto part_of = part_index(g, parts);
  std::vector<char> seen(g.vertex_count(), 0);
  Count total = 0;
  for (Vertex a : v1) {
    if (seen[a]) continue;
    seen[a] = 1;
    Count d2 = 0, d3 = 0;
    for (Vertex b : g.neighbors(a)) {
      d2 += part_of[b] == 1;
      d3 += part_of[b] == 2;
    }
    total = sat_add(total, d2 * d3);
  }
  return total;
}

Count count_cycles_rainbow(const Graph& g, const std::vector<VertexSet>& parts) {
  const std::size_t k = parts.size();
  if (k < 3) throw std::invalid_argument("count_cycles_rainbow: need at least 3 parts");
  std::vector<std::span<const Vertex>> views(parts.begin(), parts.end());
  auto part_of = part_index(g, views);
  const std::size_t n = g.vertex_count();

  std::vector<Count> cur(n, 0), next(n, 0);
  Count total = 0;
  for (Vertex start : make_vertex_set(g, parts[0])) {
    // cur[x] = number of rainbow paths start -> x with x in the current part.
    std::fill(cur.begin(), cur.end(), 0);
    cur[start] = 1;
    std::vector<Vertex> frontier{start};
    for (std::uint32_t i = 1; i < k && !frontier.empty(); ++i) {
      std::vector<Vertex> reached;
      for (Vertex x : frontier) {
        for (Vertex y : g.neighbors(x)) {
          if (part_of[y] != i) continue;
          if (next[y] == 0) reached.push_back(y);
          next[y] = sat_add(next[y], cur[x]);
        }
        cur[x] = 0;
      }
      for (Vertex y : reached) {
        cur[y] = next[y];
        next[y] = 0;
      }
      frontier = std::move(reached);
    }
    for (Vertex z : frontier) {
      if (g.has_edge(z, start)) total = sat_add(total, cur[z]);
      cur[z] = 0;
    }
  }
  return total;
}

Count count_global(const Graph& g, Shape shape) {
  const std::size_t n = g.vertex_count();
  switch (shape) {
    case Shape::Cherry: {
      Count total = 0;
      for (Vertex v = 0; v < n; ++v) {
        Count d = g.degree(v);
        total = sat_add(total, d * (d - (d > 0)) / 2);
      }
      return total;
    }
    case Shape::C3: {
      Count total = 0;
      for (Vertex u = 0; u < n; ++u) {
        auto nu = g.neighbors(u);
        for (Vertex v : nu) {
          if (v <= u) continue;
          auto nv = g.neighbors(v);
          // common neighbours w > v
          auto a = std::upper_bound(nu.begin(), nu.end(), v);
          auto b = std::upper_bound(nv.begin(), nv.end(), v);
          while (a != nu.end() && b != nv.end()) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else { ++total; ++a; ++b; }
          }
        }
      }
      return total;
    }
    case Shape::C4: {
      // Each 4-cycle has two diagonals; sum C(codeg, 2) over pairs u < w.
      std::vector<Count> codeg(n, 0);
      std::vector<Vertex> touched;
      Count twice = 0;
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : g.neighbors(u)) {
          for (Vertex w : g.neighbors(v)) {
            if (w <= u) continue;
            if (codeg[w]++ == 0) touched.push_back(w);
          }
        }
        for (Vertex w : touched) {
          twice = sat_add(twice, sat_mul(codeg[w], codeg[w] - 1) / 2);
          codeg[w] = 0;
        }
        touched.clear();
      }
      return twice == kMax ? kMax : twice / 2;
    }
  }
  return 0;
}

std::optional<std::vector<Vertex>> find_rainbow_cycle(const Graph& g,
                                                      const std::vector<VertexSet>& parts,
                                                      Rng& rng, std::uint64_t node_budget) {
  const std::size_t k = parts.size();
  if (k < 3) throw std::invalid_argument("find_rainbow_cycle: need at least 3 parts");
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> in_part;
  in_part.reserve(k);
  std::vector<char> in_union(n, 0);
  for (const auto& part : parts) {
    in_part.push_back(membership_mask(n, part));
    for (Vertex v : part) in_union[v] = 1;
  }

  std::vector<Vertex> starts(parts[0].begin(), parts[0].end());
  rng.shuffle(starts);
  std::uint64_t nodes = 0;
  std::vector<char> used(n, 0);
  std::vector<Vertex> path;
  std::vector<std::size_t> dist(n);
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();

  for (Vertex start : starts) {
    // Distances back to `start` inside the union of the parts.
    std::fill(dist.begin(), dist.end(), kInf);
    std::vector<Vertex> queue{start};
    dist[start] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      if (dist[x] + 1 >= k) continue;
      for (Vertex y : g.neighbors(x)) {
        if (in_union[y] && dist[y] == kInf) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }

    path.assign(1, start);
    used[start] = 1;
    // Iterative DFS; frames hold the shuffled candidate list for each depth.
    std::vector<std::vector<Vertex>> frames;
    auto candidates_for = [&](std::size_t depth) {
      std::vector<Vertex> cand;
      const Vertex last = path.back();
      const std::size_t remaining = k - depth;  // edges from the new vertex back to start
      for (Vertex y : g.neighbors(last)) {
        if (used[y] || !in_part[depth][y] || dist[y] > remaining) continue;
        if (depth + 1 == k && !g.has_edge(y, start)) continue;
        cand.push_back(y);
      }
      rng.shuffle(cand);
      return cand;
    };
    frames.push_back(candidates_for(1));
    while (!frames.empty()) {
      if (++nodes > node_budget) {
        for (Vertex v : path) used[v] = 0;
        return std::nullopt;
      }
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
      if (path.size() == k) {
        for (Vertex v : path) used[v] = 0;
        return path;
      }
      frames.push_back(candidates_for(path.size()));
    }
  }
  return std::nullopt;
}

namespace {

// Draws `count` disjoint sets of `size` vertices each.
std::vector<VertexSet> disjoint_sets(std::size_t n, std::size_t count, std::size_t size,
                                     Rng& rng) {
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  // Partial Fisher-Yates over the prefix we need.
  const std::size_t need = count * size;
  for (std::size_t i = 0; i < need; ++i) {
    std::swap(order[i], order[i + rng.below(n - i)]);
  }
  std::vector<VertexSet> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    out[j].assign(order.begin() + static_cast<std::ptrdiff_t>(j * size),
                  order.begin() + static_cast<std::ptrdiff_t>((j + 1) * size));
    std::sort(out[j].begin(), out[j].end());
  }
  return out;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

std::vector<CountReport> certify_pseudorandom(const Graph& g, const ParamSet& params,
                                              std::size_t samples, std::uint64_t seed,
                                              const CertifyOptions& options) {
  if (samples == 0) throw std::invalid_argument("certify_pseudorandom: samples must be >= 1");
  if (params.ell0 == 0) throw std::invalid_argument("certify_pseudorandom: ell0 must be positive");
  const std::size_t n = g.vertex_count();
  const double p = params.p;
  const double nd = static_cast<double>(n);
  Rng rng(seed);
  std::vector<CountReport> out;

  auto unsampled = [&](const std::string& property, std::size_t k, std::size_t parts,
                       std::size_t size) {
    CountReport r;
    r.property = property;
    r.k = k;
    r.sizes.assign(parts, size);
    r.note = "n too small for " + std::to_string(parts) + " disjoint sets of size " +
             std::to_string(size);
    out.push_back(std::move(r));
  };

  const std::size_t big = std::max<std::size_t>(1, ceil_div(n, params.ell0));
  const std::size_t small = std::max<std::size_t>(1, ceil_div(n, params.ell0 * params.ell0));

  if (2 * big > n) {
    unsampled("A1", 2, 2, big);
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      auto sets = disjoint_sets(n, 2, big, rng);
      CountReport r;
      r.property = "A1";
      r.k = 2;
      r.sizes = {big, big};
      r.observed = count_edges_between(g, sets[0], sets[1]);
      r.bound = p / 2.0 * static_cast<double>(big) * static_cast<double>(big);
      r.pass = static_cast<double>(r.observed) >= r.bound;
      out.push_back(std::move(r));
    }
  }

  if (3 * big > n) {
    unsampled("A2", 3, 3, big);
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      auto sets = disjoint_sets(n, 3, big, rng);
      CountReport r;
      r.property = "A2";
      r.k = 3;
      r.sizes = {big, big, big};
      r.observed = count_cherries(g, sets[0], sets[1], sets[2]);
      r.bound = p * p / 4.0 * std::pow(static_cast<double>(big), 3);
      r.pass = static_cast<double>(r.observed) >= r.bound;
      out.push_back(std::move(r));
    }
  }
  {
    CountReport r;
      r.property = "A2-global";
      r.k = 3;
      r.sizes = {n};
    r.observed = count_global(g, Shape::Cherry);
    r.bound = p * p * nd * nd * nd;
    r.upper_bound = true;
    r.pass = static_cast<double>(r.observed) <= r.bound;
    out.push_back(std::move(r));
  }

  std::size_t k_end = params.ell0;
  if (options.max_cycle_length > 0) k_end = std::min(k_end, options.max_cycle_length + 1);
  for (std::size_t k = params.ell; k < k_end; ++k) {
    if (k * small > n) {
      unsampled("A3", k, k, small);
      continue;
    }
    for (std::size_t s = 0; s < samples; ++s) {
      auto sets = disjoint_sets(n, k, small, rng);
      CountReport r;
      r.property = "A3";
      r.k = k;
      r.sizes = std::vector<std::size_t>(k, small);
      r.observed = count_cycles_rainbow(g, sets);
      r.bound = 0.5 * std::pow(p * static_cast<double>(small), static_cast<double>(k));
      r.pass = static_cast<double>(r.observed) >= r.bound;
      out.push_back(std::move(r));
    }
  }
  for (std::size_t k : {3u, 4u}) {
    CountReport r;
      r.property = "A3-global";
      r.k = k;
      r.sizes = {n};
    r.observed = count_global(g, k == 3 ? Shape::C3 : Shape::C4);
    r.bound = std::pow(p * nd, static_cast<double>(k));
    r.upper_bound = true;
    r.pass = static_cast<double>(r.observed) <= r.bound;
    out.push_back(std::move(r));
  }
  return out;
}

void write_reports_csv(std::ostream& out, const std::vector<CountReport>& reports) {
  out << "property,k,sizes,observed,bound,pass\n";
  for (const auto& r : reports) {
    out << r.property << ',' << r.k << ',';
    for (std::size_t i = 0; i < r.sizes.size(); ++i) {
      if (i > 0) out << 'x';
      out << r.sizes[i];
    }
    out << ',' << r.observed << ',' << std::setprecision(10) << r.bound << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace perturb
