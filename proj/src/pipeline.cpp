#include "perturb/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "perturb/instance.hpp"

namespace perturb {

namespace {

constexpr std::size_t kNoCycle = std::numeric_limits<std::size_t>::max();

}  // namespace

PartialEmbedding embed_middle(const Graph& f_mid, const Graph& g, const VertexSet& occupied,
                              const ParamSet& params, std::uint64_t seed,
                              const MiddleOptions& options) {
  (void)params;
  const std::size_t n = g.vertex_count();
  const std::size_t m = f_mid.vertex_count();
  PartialEmbedding emb(m, n);
  if (m == 0) return emb;
  if (f_mid.max_degree() > 2) throw std::invalid_argument("embed_middle: degree exceeds 2");

  std::vector<char> avail(n, 1);
  for (Vertex x : occupied) avail.at(x) = 0;
  const std::size_t free_count =
      static_cast<std::size_t>(std::count(avail.begin(), avail.end(), char{1}));
  if (free_count < m) {
    throw EmbeddingError(FailureKind::CycleSearchFailure,
                         std::to_string(m) + " vertices to place, " +
                             std::to_string(free_count) + " free");
  }
  std::size_t spare = free_count - m;
  Rng rng(seed);
  const auto comps = linear_components(f_mid);

  // Paths: consecutive segments of one long path.
  std::size_t path_vertices = 0;
  for (const auto& c : comps) {
    if (!c.is_cycle) path_vertices += c.vertices.size();
  }
  if (path_vertices > 0) {
    VertexSet blocked;
    for (Vertex x = 0; x < n; ++x) {
      if (!avail[x]) blocked.push_back(x);
    }
    auto long_path = find_long_path(g, blocked, path_vertices - 1, derive_seed(seed, 1));
    std::size_t pos = 0;
    for (const auto& c : comps) {
      if (c.is_cycle) continue;
      for (Vertex v : c.vertices) {
        emb.map(v, long_path[pos]);
        avail[long_path[pos]] = 0;
        ++pos;
      }
    }
  }

  // Cycles, longest first.
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_cycle) pending.push_back(i);
  }
  auto shorter = [&](std::size_t a, std::size_t b) {
    return comps[a].vertices.size() < comps[b].vertices.size();
  };
  std::stable_sort(pending.begin(), pending.end(), shorter);
  std::vector<std::size_t> host_cycle(n, kNoCycle);
  std::size_t repairs = 0;
  const std::size_t repair_cap = options.repairs_per_vertex * m + 100;

  auto place = [&](std::size_t ci, const std::vector<Vertex>& cyc) {
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      emb.map(comps[ci].vertices[j], cyc[j]);
      avail[cyc[j]] = 0;
      host_cycle[cyc[j]] = ci;
    }
  };
  auto eject = [&](std::size_t ci) {
    for (Vertex v : comps[ci].vertices) {
      Vertex x = emb.image(v);
      host_cycle[x] = kNoCycle;
      avail[x] = 1;
      emb.unmap(v);
    }
    pending.insert(std::upper_bound(pending.begin(), pending.end(), ci, shorter), ci);
  };

  // Vertices that currently start no cycle. Up to `spare` of them may stay
  // uncovered; beyond that a placed cycle next to one of them is kicked out.
  std::vector<char> skipped(n, 0);
  std::vector<Vertex> skip_list;
  auto clear_skips = [&] {
    for (Vertex v : skip_list) skipped[v] = 0;
    skip_list.clear();
  };

  std::size_t fewest_pending = pending.size();
  std::size_t last_progress = 0;
  const std::size_t stall_limit = std::max<std::size_t>(40, m / options.stall_divisor);

  while (!pending.empty()) {
    const std::size_t ci = pending.back();
    const std::size_t k = comps[ci].vertices.size();
    if (pending.size() < fewest_pending) {
      fewest_pending = pending.size();
      last_progress = repairs;
    }

    // Fail-first: the available vertex with the fewest available neighbours.
    std::optional<Vertex> start;
    std::size_t best_deg = 0, ties = 0;
    for (Vertex x = 0; x < n; ++x) {
      if (!avail[x] || skipped[x]) continue;
      std::size_t d = 0;
      for (Vertex y : g.neighbors(x)) d += avail[y];
      if (!start || d < best_deg) {
        start = x;
        best_deg = d;
        ties = 1;
      } else if (d == best_deg && rng.below(++ties) == 0) {
        start = x;
      }
    }

    if (start) {
      const Vertex x = *start;
      auto cyc = find_cycle_through(g, avail, x, k, rng, options.search_budget);
      if (!cyc && repairs < repair_cap) {
        // Swap: a cycle through x that may reuse one or two placed cycles next
        // to x; only the cycles it actually touches are ejected.
        std::vector<std::size_t> near;
        for (Vertex y : g.neighbors(x)) {
          if (host_cycle[y] != kNoCycle &&
              std::find(near.begin(), near.end(), host_cycle[y]) == near.end()) {
            near.push_back(host_cycle[y]);
          }
        }
        rng.shuffle(near);
        if (near.size() > 8) near.resize(8);
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t a = 0; a < near.size(); ++a) groups.push_back({near[a]});
        for (std::size_t a = 0; a < near.size() && groups.size() < near.size() + 12; ++a)
          for (std::size_t b = a + 1; b < near.size() && groups.size() < near.size() + 12; ++b)
            groups.push_back({near[a], near[b]});
        for (const auto& group : groups) {
          std::vector<char> widened = avail;
          for (std::size_t d : group)
            for (Vertex v : comps[d].vertices) widened[emb.image(v)] = 1;
          cyc = find_cycle_through(g, widened, x, k, rng, options.search_budget / 4);
          if (!cyc) continue;
          std::vector<std::size_t> hit;
          for (Vertex y : *cyc) {
            if (host_cycle[y] != kNoCycle &&
                std::find(hit.begin(), hit.end(), host_cycle[y]) == hit.end()) {
              hit.push_back(host_cycle[y]);
            }
          }
          for (std::size_t d : hit) eject(d);
          ++repairs;
          break;
        }
      }
      if (cyc) {
        pending.erase(std::find(pending.begin(), pending.end(), ci));
        place(ci, *cyc);
        clear_skips();
        continue;
      }
      if (skip_list.size() < spare) {
        skipped[x] = 1;
        skip_list.push_back(x);
        continue;
      }
      skipped[x] = 1;
      skip_list.push_back(x);
    }

    // Stuck: kick out a placed cycle next to a skipped vertex.
    if (repairs >= repair_cap || repairs - last_progress > stall_limit) {
      throw EmbeddingError(FailureKind::CycleSearchFailure,
                           "no C" + std::to_string(k) + " among uncovered vertices (" +
                               std::to_string(pending.size()) + " cycles left, " +
                               std::to_string(repairs) + " repairs)");
    }
    std::vector<std::size_t> near;
    for (Vertex x : skip_list) {
      for (Vertex y : g.neighbors(x)) {
        if (host_cycle[y] != kNoCycle) near.push_back(host_cycle[y]);
      }
    }
    if (near.empty()) {
      for (Vertex x = 0; x < n; ++x) {
        if (host_cycle[x] != kNoCycle) near.push_back(host_cycle[x]);
      }
    }
    if (near.empty()) {
      throw EmbeddingError(FailureKind::CycleSearchFailure,
                           "no C" + std::to_string(k) + " among uncovered vertices and nothing to eject");
    }
    eject(near[rng.below(near.size())]);
    ++repairs;
    clear_skips();
  }
  return emb;
}

SwitchPlan build_switch_plan(const Graph& f, const Decomposition& d, std::size_t ell) {
  const VertexSet out = d.v_minus_w();
  const auto in_out = membership_mask(f.vertex_count(), out);
  auto sub = induced_subgraph(f, out);
  SwitchPlan plan;
  std::vector<Increment> triangles;
  for (const auto& comp : linear_components(sub.graph)) {
    Increment inc;
    for (Vertex v : comp.vertices) inc.vertices.push_back(sub.to_parent[v]);
    if (!comp.is_cycle && comp.vertices.size() == 2) {
      inc.kind = IncrementKind::Pair;
      for (std::size_t j = 0; j < 2; ++j) {
        for (Vertex y : f.neighbors(inc.vertices[j])) {
          if (!in_out[y]) inc.anchors[j] = y;
        }
      }
      plan.increments.push_back(std::move(inc));
    } else if (comp.is_cycle && comp.vertices.size() == 3) {
      if (ell > 3) {
        throw std::invalid_argument("build_switch_plan: triangle in V\\W with ell > 3");
      }
      inc.kind = IncrementKind::Triangle;
      triangles.push_back(std::move(inc));
    } else {
      throw std::invalid_argument("build_switch_plan: F[V\\W] component is neither K2 nor C3");
    }
  }
  plan.t_prime = plan.increments.size();
  for (auto& t : triangles) plan.increments.push_back(std::move(t));
  return plan;
}

bool switch_count_in_range(std::size_t t, std::size_t out_size) {
  return 3 * (t + 1) >= out_size && 2 * t <= out_size + 2;
}

namespace {

std::vector<VertexSet> neighborhoods(const PartialEmbedding& emb, const Graph& target) {
  std::vector<VertexSet> out(emb.host_count());
  for (Vertex x = 0; x < emb.host_count(); ++x) {
    if (emb.covered(x)) out[x] = embedded_neighborhood(emb, target, x);
  }
  return out;
}

std::size_t changed_neighborhoods(const std::vector<char>& covered_before,
                                  const std::vector<VertexSet>& before,
                                  const PartialEmbedding& emb, const Graph& target) {
  std::size_t changed = 0;
  for (Vertex x = 0; x < emb.host_count(); ++x) {
    if (covered_before[x] && embedded_neighborhood(emb, target, x) != before[x]) ++changed;
  }
  return changed;
}

// Applies occupants -> fresh and increment -> freed; keeps the change when
// every touched vertex still has all its edges, otherwise undoes it.
bool try_switch(PartialEmbedding& emb, const SwitchContext& ctx,
                const std::vector<Vertex>& freed, const std::vector<Vertex>& fresh,
                const std::vector<Vertex>& incoming) {
  std::vector<Vertex> occupants;
  for (Vertex x : freed) occupants.push_back(emb.preimage(x));
  for (std::size_t j = 0; j < freed.size(); ++j) emb.relocate(occupants[j], fresh[j]);
  for (std::size_t j = 0; j < freed.size(); ++j) emb.map(incoming[j], freed[j]);
  std::vector<Vertex> touched = occupants;
  touched.insert(touched.end(), incoming.begin(), incoming.end());
  if (emb.broken_vertices(ctx.target, ctx.h, touched).empty()) return true;
  for (Vertex w : incoming) emb.unmap(w);
  for (std::size_t j = 0; j < freed.size(); ++j) emb.relocate(occupants[j], freed[j]);
  return false;
}

SwitchAudit finish_switch(PartialEmbedding& emb, ReservoirIndex& index, const SwitchContext& ctx,
                          IncrementKind kind, const std::vector<char>& covered_before,
                          const std::vector<VertexSet>& before) {
  SwitchAudit audit;
  audit.kind = kind;
  audit.changed = changed_neighborhoods(covered_before, before, emb, ctx.target);
  audit.valid = emb.is_valid(ctx.target, ctx.h);
  audit.reservoir_drop = index.refresh(emb, ctx.target, ctx.h);
  return audit;
}

std::vector<char> covered_mask(const PartialEmbedding& emb) {
  std::vector<char> mask(emb.host_count(), 0);
  for (Vertex x = 0; x < emb.host_count(); ++x) mask[x] = emb.covered(x);
  return mask;
}

constexpr std::size_t kCandidateCap = 4000;

}  // namespace

SwitchAudit switch_insert_pair(PartialEmbedding& emb, ReservoirIndex& index,
                               const SwitchContext& ctx, const Increment& inc,
                               std::uint64_t seed) {
  if (inc.kind != IncrementKind::Pair || inc.vertices.size() != 2) {
    throw std::invalid_argument("switch_insert_pair: not a pair increment");
  }
  const Vertex w1 = inc.vertices[0], w2 = inc.vertices[1];
  if (emb.mapped(w1) || emb.mapped(w2)) throw std::logic_error("switch_insert_pair: already mapped");
  for (const auto& a : inc.anchors) {
    if (a && !emb.mapped(*a)) throw std::logic_error("switch_insert_pair: anchor not embedded");
  }
  const VertexSet uncovered = emb.uncovered();
  const VertexSet image = emb.image_set();
  if (uncovered.size() < 2 || image.empty()) {
    throw EmbeddingError(FailureKind::ReservoirUnderflow,
                         std::to_string(uncovered.size()) + " uncovered host vertices");
  }
  const std::size_t need = std::max<std::size_t>(1, 2 * ctx.floor);
  const auto covered_before = covered_mask(emb);
  const auto before = neighborhoods(emb, ctx.target);
  Rng rng(seed);
  bool had_sets = false;
  std::size_t smallest = std::numeric_limits<std::size_t>::max();

  for (std::size_t attempt = 0; attempt < ctx.tries; ++attempt) {
    const std::size_t i = rng.below(uncovered.size());
    std::size_t j = rng.below(uncovered.size() - 1);
    if (j >= i) ++j;
    for (int order = 0; order < 2; ++order) {
      const Vertex v1 = order == 0 ? uncovered[i] : uncovered[j];
      const Vertex v2 = order == 0 ? uncovered[j] : uncovered[i];
      Vertex u[2];
      for (std::size_t s = 0; s < 2; ++s) {
        // Anchor-free ends get an arbitrary embedded partner.
        u[s] = inc.anchors[s] ? emb.image(*inc.anchors[s]) : image[rng.below(image.size())];
      }
      std::array<VertexSet, 2> sets{reservoir_set(emb, ctx.target, ctx.h, u[0], v1),
                                    reservoir_set(emb, ctx.target, ctx.h, u[1], v2)};
      for (auto& s : sets) {
        std::erase_if(s, [&](Vertex x) {
          return (inc.anchors[0] && x == u[0]) || (inc.anchors[1] && x == u[1]);
        });
      }
      smallest = std::min({smallest, sets[0].size(), sets[1].size()});
      if (sets[0].size() < need || sets[1].size() < need) continue;
      had_sets = true;
      const auto in_second = membership_mask(emb.host_count(), sets[1]);
      std::vector<Vertex> firsts = sets[0];
      rng.shuffle(firsts);
      std::size_t tested = 0;
      for (Vertex x : firsts) {
        for (Vertex y : ctx.g.neighbors(x)) {
          if (!in_second[y] || y == x) continue;
          if (++tested > kCandidateCap) break;
          if (try_switch(emb, ctx, {x, y}, {v1, v2}, {w1, w2})) {
            return finish_switch(emb, index, ctx, IncrementKind::Pair, covered_before, before);
          }
        }
        if (tested > kCandidateCap) break;
      }
    }
  }
  if (!had_sets) {
    throw EmbeddingError(FailureKind::ReservoirUnderflow,
                         "smallest B(u,v) seen has " + std::to_string(smallest) +
                             " vertices, need " + std::to_string(need));
  }
  throw EmbeddingError(FailureKind::NoSwitchEdge,
                       "no usable G-edge between the reservoir sets in " +
                           std::to_string(ctx.tries) + " tries");
}

SwitchAudit switch_insert_triangle(PartialEmbedding& emb, ReservoirIndex& index,
                                   const SwitchContext& ctx, const Increment& inc,
                                   std::uint64_t seed) {
  if (inc.kind != IncrementKind::Triangle || inc.vertices.size() != 3) {
    throw std::invalid_argument("switch_insert_triangle: not a triangle increment");
  }
  for (Vertex w : inc.vertices) {
    if (emb.mapped(w)) throw std::logic_error("switch_insert_triangle: already mapped");
  }
  const VertexSet uncovered = emb.uncovered();
  if (uncovered.size() < 3) {
    throw EmbeddingError(FailureKind::ReservoirUnderflow,
                         std::to_string(uncovered.size()) + " uncovered host vertices");
  }
  const std::size_t need = std::max<std::size_t>(1, 3 * ctx.floor);
  const auto covered_before = covered_mask(emb);
  const auto before = neighborhoods(emb, ctx.target);
  Rng rng(seed);
  bool had_sets = false;
  std::size_t smallest = std::numeric_limits<std::size_t>::max();

  for (std::size_t attempt = 0; attempt < ctx.tries; ++attempt) {
    std::vector<Vertex> pool = uncovered;
    std::vector<Vertex> v(3);
    for (std::size_t s = 0; s < 3; ++s) {
      std::size_t r = s + rng.below(pool.size() - s);
      std::swap(pool[s], pool[r]);
      v[s] = pool[s];
    }
    std::array<VertexSet, 3> sets;
    for (std::size_t s = 0; s < 3; ++s) {
      sets[s] = reservoir_set(emb, ctx.target, ctx.h, v[s]);
      smallest = std::min(smallest, sets[s].size());
    }
    if (sets[0].size() < need || sets[1].size() < need || sets[2].size() < need) continue;
    had_sets = true;
    std::array<std::size_t, 3> perm{0, 1, 2};
    do {
      const auto in2 = membership_mask(emb.host_count(), sets[perm[1]]);
      const auto in3 = membership_mask(emb.host_count(), sets[perm[2]]);
      std::vector<Vertex> firsts = sets[perm[0]];
      rng.shuffle(firsts);
      std::size_t tested = 0;
      for (Vertex x : firsts) {
        for (Vertex y : ctx.g.neighbors(x)) {
          if (!in2[y]) continue;
          for (Vertex z : ctx.g.neighbors(y)) {
            if (!in3[z] || z == x || !ctx.g.has_edge(x, z)) continue;
            if (++tested > kCandidateCap) break;
            if (try_switch(emb, ctx, {x, y, z}, {v[perm[0]], v[perm[1]], v[perm[2]]},
                           inc.vertices)) {
              return finish_switch(emb, index, ctx, IncrementKind::Triangle, covered_before,
                                   before);
            }
          }
          if (tested > kCandidateCap) break;
        }
        if (tested > kCandidateCap) break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (!had_sets) {
    throw EmbeddingError(FailureKind::ReservoirUnderflow,
                         "smallest B(v) seen has " + std::to_string(smallest) +
                             " vertices, need " + std::to_string(need));
  }
  throw EmbeddingError(FailureKind::NoRainbowTriangle,
                       "no G-triangle across the reservoir sets in " +
                           std::to_string(ctx.tries) + " tries");
}

std::string FailureReport::to_text() const {
  std::ostringstream out;
  out << "stage=" << to_string(stage) << ";kind=" << to_string(kind) << ";seed=" << seed
      << ";n=" << n << ";u=" << u_size << ";w_minus_u=" << middle_size
      << ";v_minus_w=" << out_size << ";reason=" << reason;
  return out.str();
}

EmbedResult embed_full(const Graph& f, const Graph& g, const Graph& g_alpha,
                       const ParamSet& params, std::uint64_t seed, const EmbedOptions& options) {
  const std::size_t n = f.vertex_count();
  if (g.vertex_count() != n || g_alpha.vertex_count() != n) {
    throw std::invalid_argument("embed_full: target and host sizes differ");
  }
  if (params.n != n) throw std::invalid_argument("embed_full: params.n does not match");
  if (options.validate_params) params.validate();
  if (!verify_family_membership(f, params.ell, false)) {
    throw std::invalid_argument("embed_full: target needs max degree 2 and girth >= ell");
  }
  if (!min_degree_audit(g_alpha, params.alpha)) {
    throw std::invalid_argument("embed_full: dense host fails the minimum degree audit");
  }

  EmbedResult result;
  const Graph full = augment_to_maximal(f, params.ell);
  const Graph h = graph_union(g, g_alpha);

  FailureReport report;
  report.n = n;
  report.seed = seed;
  Decomposition d;
  try {
    try {
      d = decompose(full, params, {.allow_empty_core = params.practical_mode});
    } catch (const EmbeddingError& e) {
      // Small n: one trimmed cycle can overshoot the |V \ W| target on its own.
      if (!params.practical_mode || e.kind() != FailureKind::InfeasibleDecomposition) throw;
      d = decompose(full, params, {.allow_empty_core = true, .relax_out_size = true});
    }
  } catch (const EmbeddingError& e) {
    report.stage = e.stage();
    report.kind = e.kind();
    report.reason = e.what();
    result.attempts = 1;
    result.failure = report;
    return result;
  }
  result.decomposition = d;
  const VertexSet middle = d.w_minus_u();
  const VertexSet out = d.v_minus_w();
  report.u_size = d.u_set.size();
  report.middle_size = middle.size();
  report.out_size = out.size();

  // F[U], with its path (if long enough) closed into a cycle for Step 1.
  auto core_part = induced_subgraph(full, d.u_set);
  Graph f_u = core_part.graph;
  for (const auto& comp : linear_components(f_u)) {
    if (!comp.is_cycle && comp.length() + 1 >= params.ell && comp.length() >= 2) {
      f_u.add_edge(comp.vertices.front(), comp.vertices.back());
    }
  }
  auto middle_part = induced_subgraph(full, middle);
  const SwitchPlan plan = build_switch_plan(full, d, params.ell);

  const std::size_t budget = std::max<std::size_t>(1, params.retry_budget);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const std::uint64_t s = derive_seed(seed, attempt);
    result.attempts = attempt + 1;
    report.seed = s;
    try {
      PartialEmbedding emb(n, n);
      auto core = embed_core(f_u, g, g_alpha, params, derive_seed(s, 1));
      for (Vertex i = 0; i < f_u.vertex_count(); ++i) {
        emb.map(core_part.to_parent[i], core.embedding.image(i));
      }
      auto mid = embed_middle(middle_part.graph, g, emb.image_set(), params, derive_seed(s, 2));
      for (Vertex i = 0; i < middle_part.graph.vertex_count(); ++i) {
        emb.map(middle_part.to_parent[i], mid.image(i));
      }

      ReservoirIndex index;
      for (auto [u, v] : core.index.pairs()) index.track(u, v);
      if (index.pairs().empty()) {
        Rng pair_rng(derive_seed(s, 3));
        index.sample_pairs(n, 50, pair_rng);
      }
      index.refresh(emb, full, h);
      SwitchContext ctx{full, h, g, params.reservoir_floor_count()};
      for (std::size_t i = 0; i < plan.increments.size(); ++i) {
        const auto& inc = plan.increments[i];
        const std::uint64_t step_seed = derive_seed(s, 4, i);
        SwitchAudit audit = inc.kind == IncrementKind::Pair
                                ? switch_insert_pair(emb, index, ctx, inc, step_seed)
                                : switch_insert_triangle(emb, index, ctx, inc, step_seed);
        result.audits.push_back(audit);
        if (options.on_switch) options.on_switch(audit, emb);
        if (!audit.valid) {
          throw EmbeddingError(FailureKind::VerificationFailure,
                               "invalid embedding after switch " + std::to_string(i));
        }
      }

      if (emb.size() != n) {
        throw EmbeddingError(FailureKind::VerificationFailure,
                             std::to_string(n - emb.size()) + " target vertices unmapped");
      }
      Embedding e = emb.to_embedding();
      auto check = verify_embedding(full, h, e, true);
      if (!check.valid) {
        throw EmbeddingError(FailureKind::VerificationFailure,
                             std::to_string(check.missing_edges.size()) + " missing edges, " +
                                 std::to_string(check.collisions.size()) + " collisions");
      }
      result.success = true;
      result.embedding = std::move(e);
      result.failure.reset();
      return result;
    } catch (const EmbeddingError& e) {
      report.stage = e.stage();
      report.kind = e.kind();
      report.reason = e.what();
      result.failure = report;
    }
  }
  return result;
}

}  // namespace perturb
