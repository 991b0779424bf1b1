#include "perturb/reservoir.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "perturb/errors.hpp"
#include "perturb/search.hpp"

namespace perturb {

namespace {

// Candidate center positions (indices into comp.vertices) at spacing 5.
std::vector<std::size_t> center_positions(const LinearComponent& comp, Rng* rng) {
  std::vector<std::size_t> out;
  const std::size_t len = comp.vertices.size();
  if (comp.is_cycle) {
    const std::size_t cap = std::max<std::size_t>(1, len / 5);
    const std::size_t offset = rng ? rng->below(len) : 0;
    for (std::size_t i = 0; i < cap; ++i) out.push_back((offset + 5 * i) % len);
    return out;
  }
  const std::size_t edges = comp.length();
  if (edges < 2) return out;
  const std::size_t cap = (edges - 1 + 4) / 5;
  const std::size_t slack = (edges - 1) - (1 + 5 * (cap - 1));  // room left after the last center
  const std::size_t offset = 1 + (rng ? rng->below(slack + 1) : 0);
  for (std::size_t i = 0; i < cap; ++i) out.push_back(offset + 5 * i);
  return out;
}

bool is_triangle(const LinearComponent& comp) {
  return comp.is_cycle && comp.vertices.size() == 3;
}

bool counts_for_side(const LinearComponent& comp, std::size_t ell, bool triangles) {
  return ell != 3 || is_triangle(comp) == triangles;
}

std::uint64_t choose2(std::uint64_t d) { return d < 2 ? 0 : d * (d - 1) / 2; }

// Centered copies of a shape inside the free part of g.
class CopySampler {
 public:
  CopySampler(const Graph& g, Shape shape)
      : g_(g), shape_(shape), used_(g.vertex_count(), 0), through_(g.vertex_count(), 0) {
    const std::uint64_t d = g.max_degree();
    bound_ = shape == Shape::C4 ? choose2(d) * (d > 0 ? d - 1 : 0) : choose2(d);
  }

  void reset() { std::fill(used_.begin(), used_.end(), 0); }

  std::optional<CenteredCopy> draw(Rng& rng) {
    // Rejection against a degree bound gives a center with probability
    // proportional to its number of copies; fall back to an exact scan.
    const std::size_t n = g_.vertex_count();
    if (bound_ > 0) {
      for (std::size_t tries = 0; tries < 40 * n; ++tries) {
        Vertex c = static_cast<Vertex>(rng.below(n));
        if (used_[c]) continue;
        std::uint64_t w = weight(c);
        if (w > 0 && rng.uniform01() * static_cast<double>(bound_) < static_cast<double>(w)) {
          return finish(c, rng);
        }
      }
    }
    std::vector<std::uint64_t> weights(n, 0);
    std::uint64_t total = 0;
    for (Vertex c = 0; c < n; ++c) {
      if (!used_[c]) weights[c] = weight(c);
      total += weights[c];
    }
    if (total == 0) return std::nullopt;
    std::uint64_t r = rng.below(total);
    for (Vertex c = 0; c < n; ++c) {
      if (r < weights[c]) return finish(c, rng);
      r -= weights[c];
    }
    return std::nullopt;
  }

 private:
  std::vector<Vertex> free_neighbors(Vertex c) const {
    std::vector<Vertex> out;
    for (Vertex a : g_.neighbors(c)) {
      if (!used_[a]) out.push_back(a);
    }
    return out;
  }

  // C4 copies through c: pairs of free neighbours a, b of c with a free common
  // neighbour x != c. Calls fn(a, b, x) for each; returns the count.
  template <class Fn>
  std::uint64_t for_each_c4(Vertex c, Fn&& fn) const {
    auto nb = free_neighbors(c);
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        for (Vertex x : g_.neighbors(nb[i])) {
          if (x == c || used_[x] || x == nb[j] || !g_.has_edge(x, nb[j])) continue;
          ++count;
          fn(nb[i], nb[j], x);
        }
      }
    }
    return count;
  }

  std::uint64_t weight(Vertex c) const {
    switch (shape_) {
      case Shape::Cherry:
        return choose2(free_neighbors(c).size());
      case Shape::C3: {
        auto nb = free_neighbors(c);
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
          for (std::size_t j = i + 1; j < nb.size(); ++j) w += g_.has_edge(nb[i], nb[j]);
        return w;
      }
      case Shape::C4: {
        // pairs of free neighbours of c sharing a free vertex x != c
        std::uint64_t w = 0;
        touched_.clear();
        for (Vertex a : free_neighbors(c)) {
          for (Vertex x : g_.neighbors(a)) {
            if (x == c || used_[x]) continue;
            if (through_[x] == 0) touched_.push_back(x);
            w += through_[x]++;
          }
        }
        for (Vertex x : touched_) through_[x] = 0;
        return w;
      }
    }
    return 0;
  }

  CenteredCopy finish(Vertex c, Rng& rng) {
    CenteredCopy copy;
    copy.center = c;
    auto nb = free_neighbors(c);
    if (shape_ == Shape::Cherry) {
      std::size_t i = rng.below(nb.size());
      std::size_t j = rng.below(nb.size() - 1);
      if (j >= i) ++j;
      copy.ring = {nb[i], nb[j]};
    } else if (shape_ == Shape::C3) {
      std::vector<std::pair<Vertex, Vertex>> edges;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (g_.has_edge(nb[i], nb[j])) edges.emplace_back(nb[i], nb[j]);
      auto [a, b] = edges[rng.below(edges.size())];
      copy.ring = rng.below(2) ? std::vector<Vertex>{a, b} : std::vector<Vertex>{b, a};
    } else {
      std::uint64_t total = for_each_c4(c, [](Vertex, Vertex, Vertex) {});
      std::uint64_t pick = rng.below(total);
      for_each_c4(c, [&](Vertex a, Vertex b, Vertex x) {
        if (pick-- == 0) copy.ring = rng.below(2) ? std::vector<Vertex>{a, b, x}
                                                  : std::vector<Vertex>{b, a, x};
      });
    }
    used_[c] = 1;
    for (Vertex v : copy.ring) used_[v] = 1;
    return copy;
  }

  const Graph& g_;
  Shape shape_;
  std::vector<char> used_;
  mutable std::vector<std::uint32_t> through_;
  mutable std::vector<Vertex> touched_;
  std::uint64_t bound_ = 0;
};

}  // namespace

std::size_t center_capacity(const Graph& f, std::size_t ell, bool triangles) {
  std::size_t cap = 0;
  for (const auto& comp : linear_components(f)) {
    if (counts_for_side(comp, ell, triangles)) cap += center_positions(comp, nullptr).size();
  }
  return cap;
}

CenterChoice pick_centers(const Graph& f, std::size_t t, std::size_t ell, std::uint64_t seed) {
  CenterChoice choice;
  if (t == 0) return choice;
  const std::size_t other = center_capacity(f, ell, false);
  const std::size_t tri = ell == 3 ? center_capacity(f, ell, true) : 0;
  if (other < t && tri < t) {
    throw EmbeddingError(FailureKind::CenterCapacity,
                         "asked for " + std::to_string(t) + " centers, at most " +
                             std::to_string(std::max(other, tri)) + " possible");
  }
  choice.in_triangles = ell == 3 && tri >= t && (other < t || tri > other);

  Rng rng(seed);
  std::vector<Vertex> pool;
  for (const auto& comp : linear_components(f)) {
    if (!counts_for_side(comp, ell, choice.in_triangles)) continue;
    for (std::size_t pos : center_positions(comp, &rng)) pool.push_back(comp.vertices[pos]);
  }
  rng.shuffle(pool);
  choice.centers.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(t));
  return choice;
}

std::size_t audit_copies(const std::vector<CenteredCopy>& copies, const Graph& g_alpha,
                         Vertex u, Vertex v) {
  std::size_t count = 0;
  for (const auto& c : copies) {
    count += g_alpha.has_edge(c.center, u) && g_alpha.has_edge(c.ring[0], v) &&
             g_alpha.has_edge(c.ring[1], v);
  }
  return count;
}

PlacementResult place_centered_copies(const Graph& g, const Graph& g_alpha, Shape shape,
                                      std::size_t t, std::size_t reservoir_target,
                                      std::uint64_t seed, const PlacementOptions& options) {
  const std::size_t n = g.vertex_count();
  if (g_alpha.vertex_count() != n) {
    throw std::invalid_argument("place_centered_copies: host sizes differ");
  }
  const std::size_t per_copy = shape == Shape::C4 ? 4 : 3;
  if (t * per_copy > n) {
    throw EmbeddingError(FailureKind::PlacementFailure,
                         std::to_string(t) + " copies need more than " + std::to_string(n) +
                             " host vertices");
  }
  PlacementResult result;
  CopySampler sampler(g, shape);
  std::size_t best_audit = 0;
  const std::size_t budget = std::max<std::size_t>(1, options.retry_budget);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    sampler.reset();
    std::vector<CenteredCopy> copies;
    for (std::size_t i = 0; i < t; ++i) {
      auto copy = sampler.draw(rng);
      if (!copy) {
        throw EmbeddingError(FailureKind::PlacementFailure,
                             "no disjoint copy left after " + std::to_string(i) + " of " +
                                 std::to_string(t));
      }
      copies.push_back(std::move(*copy));
    }
    std::size_t audit_min = t;
    if (n >= 2) {
      for (std::size_t s = 0; s < options.audit_pairs; ++s) {
        Vertex u = static_cast<Vertex>(rng.below(n));
        Vertex v = static_cast<Vertex>(rng.below(n - 1));
        if (v >= u) ++v;
        audit_min = std::min(audit_min, audit_copies(copies, g_alpha, u, v));
      }
    }
    best_audit = std::max(best_audit, audit_min);
    if (audit_min >= reservoir_target) {
      result.copies = std::move(copies);
      result.attempts = attempt + 1;
      result.audit_min = audit_min;
      return result;
    }
  }
  throw EmbeddingError(FailureKind::PlacementFailure,
                       "reservoir audit below " + std::to_string(reservoir_target) + " in " +
                           std::to_string(budget) + " placements (best minimum " +
                           std::to_string(best_audit) + ")");
}

namespace {

// Random free vertex among the neighbours of x in `primary`, else in `backup`.
std::optional<Vertex> free_neighbor(const PartialEmbedding& emb, const Graph& primary,
                                    const Graph& backup, Vertex x, Rng& rng) {
  for (const Graph* h : {&primary, &backup}) {
    std::vector<Vertex> cand;
    for (Vertex y : h->neighbors(x)) {
      if (!emb.covered(y)) cand.push_back(y);
    }
    if (!cand.empty()) return cand[rng.below(cand.size())];
  }
  return std::nullopt;
}

// x adjacent to a in g_alpha, y adjacent to b in g_alpha, xy an edge of g;
// falls back to any path a-x-y-b in the union.
std::optional<std::pair<Vertex, Vertex>> closing_path(const PartialEmbedding& emb,
                                                      const Graph& g, const Graph& g_alpha,
                                                      const Graph& h, Vertex a, Vertex b,
                                                      Rng& rng) {
  auto attempt = [&](const Graph& outer, const Graph& middle)
      -> std::optional<std::pair<Vertex, Vertex>> {
    std::vector<Vertex> xs;
    for (Vertex x : outer.neighbors(a)) {
      if (!emb.covered(x)) xs.push_back(x);
    }
    rng.shuffle(xs);
    for (Vertex x : xs) {
      std::vector<Vertex> ys;
      for (Vertex y : middle.neighbors(x)) {
        if (y != x && !emb.covered(y) && outer.has_edge(y, b)) ys.push_back(y);
      }
      if (!ys.empty()) return std::pair{x, ys[rng.below(ys.size())]};
    }
    return std::nullopt;
  };
  if (auto r = attempt(g_alpha, g)) return r;
  return attempt(h, h);
}

}  // namespace

CoreResult embed_core(const Graph& f_u, const Graph& g, const Graph& g_alpha,
                      const ParamSet& params, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (g_alpha.vertex_count() != n) throw std::invalid_argument("embed_core: host sizes differ");
  if (f_u.vertex_count() > n) throw std::invalid_argument("embed_core: target larger than host");
  if (f_u.max_degree() > 2) throw std::invalid_argument("embed_core: target degree exceeds 2");

  const Graph h = graph_union(g, g_alpha);
  Rng rng(seed);
  CoreResult core;
  core.embedding = PartialEmbedding(f_u.vertex_count(), n);
  auto& emb = core.embedding;
  const auto comps = linear_components(f_u);
  std::vector<std::size_t> comp_of(f_u.vertex_count());
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (Vertex v : comps[i].vertices) comp_of[v] = i;

  // Centers and their copies.
  std::size_t t = params.scaled(params.beta);
  const std::size_t cap = std::max(center_capacity(f_u, params.ell, false),
                                   params.ell == 3 ? center_capacity(f_u, params.ell, true) : 0);
  if (cap < t && cap + 1 >= t) t = cap;
  if (f_u.vertex_count() == 0) t = 0;
  core.centers = pick_centers(f_u, t, params.ell, derive_seed(seed, 1));
  core.shape = params.ell >= 5   ? Shape::Cherry
               : params.ell == 4 ? Shape::C4
               : core.centers.in_triangles ? Shape::C3
                                           : Shape::C4;
  if (t > 0) {
    PlacementOptions opts;
    opts.retry_budget = params.retry_budget;
    auto placement = place_centered_copies(g, g_alpha, core.shape, t,
                                           params.reservoir_floor_count(),
                                           derive_seed(seed, 2), opts);
    core.placement_attempts = placement.attempts;
    for (std::size_t i = 0; i < t; ++i) {
      const Vertex x = core.centers.centers[i];
      const auto& copy = placement.copies[i];
      auto nb = f_u.neighbors(x);
      emb.map(x, copy.center);
      emb.map(nb[0], copy.ring[0]);
      emb.map(nb[1], copy.ring[1]);
      if (core.shape == Shape::C4) {
        const auto& comp = comps[comp_of[x]];
        if (comp.is_cycle && comp.vertices.size() == 4) {
          for (Vertex z : comp.vertices) {
            if (!emb.mapped(z)) emb.map(z, copy.ring[2]);
          }
        } else {
          core.spare.push_back(copy.ring[2]);
        }
      }
    }
  }
  std::sort(core.spare.begin(), core.spare.end());

  std::vector<char> touched(comps.size(), 0);
  for (Vertex x : core.centers.centers) touched[comp_of[x]] = 1;

  // Short cycles go whole into g when the girth allows C3/C4 components.
  if (params.ell <= 4) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const auto& comp = comps[i];
      if (touched[i] || !comp.is_cycle || comp.vertices.size() > 4) continue;
      VertexSet free = emb.uncovered();
      std::vector<VertexSet> parts(comp.vertices.size(), free);
      auto cyc = free.size() >= comp.vertices.size() ? find_rainbow_cycle(g, parts, rng)
                                                     : std::nullopt;
      if (!cyc) {
        throw EmbeddingError(FailureKind::PlacementFailure,
                             "no free C" + std::to_string(comp.vertices.size()) + " left in G");
      }
      for (std::size_t j = 0; j < comp.vertices.size(); ++j) emb.map(comp.vertices[j], (*cyc)[j]);
      touched[i] = 1;
    }
  }

  // One arbitrary vertex for every component still untouched.
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (touched[i]) continue;
    VertexSet free = emb.uncovered();
    if (free.empty()) throw EmbeddingError(FailureKind::PlacementFailure, "host exhausted");
    emb.map(comps[i].vertices[rng.below(comps[i].vertices.size())], free[rng.below(free.size())]);
  }

  // Greedy extension along g_alpha.
  auto mapped_at_distance_two = [&](Vertex u) {
    std::vector<Vertex> seen;
    for (Vertex w : f_u.neighbors(u)) {
      for (Vertex z : f_u.neighbors(w)) {
        if (z != u && !f_u.has_edge(z, u) && emb.mapped(z) &&
            std::find(seen.begin(), seen.end(), z) == seen.end()) {
          seen.push_back(z);
        }
      }
    }
    return seen.size();
  };
  auto extendable = [&](Vertex u) -> std::optional<Vertex> {
    if (emb.mapped(u)) return std::nullopt;
    std::optional<Vertex> anchor;
    std::size_t mapped_nb = 0;
    for (Vertex w : f_u.neighbors(u)) {
      if (emb.mapped(w)) {
        ++mapped_nb;
        anchor = w;
      }
    }
    if (mapped_nb != 1 || mapped_at_distance_two(u) > 1) return std::nullopt;
    return anchor;
  };
  std::vector<Vertex> order(f_u.vertex_count());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  for (bool progress = true; progress;) {
    progress = false;
    rng.shuffle(order);
    for (Vertex u : order) {
      auto anchor = extendable(u);
      if (!anchor) continue;
      auto x = free_neighbor(emb, g_alpha, g, emb.image(*anchor), rng);
      if (!x) {
        throw EmbeddingError(FailureKind::PlacementFailure,
                             "no free neighbour to extend from host vertex " +
                                 std::to_string(emb.image(*anchor)));
      }
      emb.map(u, *x);
      progress = true;
    }
  }

  // Close the remaining gaps a - x - y - b.
  for (Vertex x : order) {
    if (emb.mapped(x)) continue;
    Vertex a = PartialEmbedding::kNone, y = PartialEmbedding::kNone;
    for (Vertex w : f_u.neighbors(x)) (emb.mapped(w) ? a : y) = w;
    if (a == PartialEmbedding::kNone || y == PartialEmbedding::kNone) {
      throw EmbeddingError(FailureKind::ClosureFailure,
                           "unexpected gap shape at target vertex " + std::to_string(x));
    }
    Vertex b = PartialEmbedding::kNone;
    for (Vertex w : f_u.neighbors(y)) {
      if (w != x) b = w;
    }
    if (b == PartialEmbedding::kNone || !emb.mapped(b)) {
      throw EmbeddingError(FailureKind::ClosureFailure,
                           "gap longer than two at target vertex " + std::to_string(x));
    }
    auto path = closing_path(emb, g, g_alpha, h, emb.image(a), emb.image(b), rng);
    if (!path) {
      throw EmbeddingError(FailureKind::ClosureFailure,
                           "no path of length 3 between host vertices " +
                               std::to_string(emb.image(a)) + " and " +
                               std::to_string(emb.image(b)));
    }
    emb.map(x, path->first);
    emb.map(y, path->second);
  }

  // Spare C4 vertices stay uncovered and free for later stages.
  core.spare.erase(std::remove_if(core.spare.begin(), core.spare.end(),
                                  [&](Vertex s) { return emb.covered(s); }),
                   core.spare.end());

  core.index.sample_pairs(n, 50, rng);
  core.index.refresh(emb, f_u, h);
  if (core.index.min_size() < params.reservoir_floor_count()) {
    throw EmbeddingError(FailureKind::ReservoirAudit,
                         "min |B(u,v)| = " + std::to_string(core.index.min_size()) +
                             " below floor " + std::to_string(params.reservoir_floor_count()));
  }
  return core;
}

}  // namespace perturb
