#include "perturb/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace perturb {

EmbeddingReport verify_embedding(const Graph& target, const Graph& h, const Embedding& e,
                                 bool require_spanning) {
  EmbeddingReport r;
  if (e.size() != target.vertex_count()) {
    r.error = "map covers " + std::to_string(e.size()) + " of " +
              std::to_string(target.vertex_count()) + " target vertices";
    r.injective = false;
    return r;
  }
  std::vector<unsigned> hits(h.vertex_count(), 0);
  for (Vertex img : e) {
    if (img >= h.vertex_count()) {
      r.error = "image " + std::to_string(img) + " outside host";
      r.injective = false;
      return r;
    }
    if (++hits[img] == 2) r.collisions.push_back(img);
  }
  std::sort(r.collisions.begin(), r.collisions.end());
  r.injective = r.collisions.empty();
  for (auto [a, b] : target.edges()) {
    if (!h.has_edge(e[a], e[b])) r.missing_edges.emplace_back(a, b);
  }
  r.spanning = r.injective && e.size() == h.vertex_count();
  r.valid = r.injective && r.missing_edges.empty() && (!require_spanning || r.spanning);
  return r;
}

bool verify_family_membership(const Graph& f, std::size_t ell, bool maximal) {
  if (f.max_degree() > 2) return false;
  std::size_t paths = 0;
  for (const auto& comp : linear_components(f)) {
    if (comp.is_cycle) {
      if (comp.vertices.size() < ell) return false;
    } else {
      ++paths;
      if (maximal && comp.length() + 2 > ell) return false;
    }
  }
  return !maximal || paths <= 1;
}

std::string to_string(OracleVerdict verdict) {
  switch (verdict) {
    case OracleVerdict::Found: return "found";
    case OracleVerdict::NotContained: return "none";
    case OracleVerdict::BudgetExhausted: return "budget";
  }
  return "?";
}

namespace {

struct Search {
  const Graph& h;
  std::vector<LinearComponent> comps;
  std::vector<Vertex> host_order;  // increasing degree
  std::vector<Vertex> image;
  std::vector<char> used;
  std::vector<std::size_t> remaining_isolated;  // P0 components from index i on
  bool spanning;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;

  // Same-length cycles are interchangeable: force their first images to increase.
  bool twin_of_previous(std::size_t ci) const {
    return ci > 0 && comps[ci].is_cycle && comps[ci - 1].is_cycle &&
           comps[ci].vertices.size() == comps[ci - 1].vertices.size();
  }

  bool isolated_prune(std::size_t ci) const {
    if (!spanning) return false;
    std::size_t lonely = 0;
    for (Vertex x = 0; x < h.vertex_count(); ++x) {
      if (used[x]) continue;
      bool free_nb = false;
      for (Vertex y : h.neighbors(x)) {
        if (!used[y]) {
          free_nb = true;
          break;
        }
      }
      if (!free_nb) ++lonely;
    }
    return lonely > remaining_isolated[ci];
  }

  bool place(std::size_t ci, std::size_t pos) {
    if (ci == comps.size()) return true;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    const auto& comp = comps[ci];
    const auto& vs = comp.vertices;
    const std::size_t k = vs.size();
    if (pos == k) return place(ci + 1, 0);

    auto try_vertex = [&](Vertex x) {
      image[vs[pos]] = x;
      used[x] = 1;
      bool ok = place(ci, pos + 1);
      if (!ok) used[x] = 0;
      return ok;
    };

    if (pos == 0) {
      if (isolated_prune(ci)) return false;
      const Vertex floor = twin_of_previous(ci) ? image[comps[ci - 1].vertices[0]] : 0;
      for (Vertex x : host_order) {
        if (used[x] || (twin_of_previous(ci) && x <= floor)) continue;
        if (try_vertex(x)) return true;
        if (exhausted) return false;
      }
      return false;
    }

    const Vertex first = image[vs[0]];
    const Vertex prev = image[vs[pos - 1]];
    for (Vertex x : h.neighbors(prev)) {
      if (used[x]) continue;
      if (comp.is_cycle) {
        if (x < first) continue;  // the first vertex carries the cycle's minimum image
        if (pos == k - 1) {
          if (!h.has_edge(x, first)) continue;
          if (k >= 3 && image[vs[1]] > x) continue;  // fix the orientation
        }
      } else if (pos == k - 1 && k >= 2 && x < first) {
        continue;  // a path and its reverse are the same copy
      }
      if (try_vertex(x)) return true;
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

OracleResult oracle_embed(const Graph& target, const Graph& h, bool require_spanning,
                          std::uint64_t node_budget) {
  OracleResult result;
  const std::size_t n = target.vertex_count();
  if (target.max_degree() > 2) {
    throw std::invalid_argument("oracle_embed: target has a vertex of degree > 2");
  }
  if (n > h.vertex_count() || (require_spanning && n != h.vertex_count())) {
    result.verdict = OracleVerdict::NotContained;
    return result;
  }
  Search s{h, linear_components(target), {}, std::vector<Vertex>(n, 0),
           std::vector<char>(h.vertex_count(), 0), {}, require_spanning, node_budget};
  std::stable_sort(s.comps.begin(), s.comps.end(), [](const auto& a, const auto& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() > b.vertices.size();
    return a.is_cycle && !b.is_cycle;
  });
  s.remaining_isolated.assign(s.comps.size() + 1, 0);
  for (std::size_t i = s.comps.size(); i-- > 0;) {
    s.remaining_isolated[i] = s.remaining_isolated[i + 1] + (s.comps[i].vertices.size() == 1);
  }
  s.host_order.resize(h.vertex_count());
  for (Vertex v = 0; v < h.vertex_count(); ++v) s.host_order[v] = v;
  std::stable_sort(s.host_order.begin(), s.host_order.end(),
                   [&](Vertex a, Vertex b) { return h.degree(a) < h.degree(b); });

  const bool found = s.place(0, 0);
  result.nodes = s.nodes;
  if (found) {
    result.verdict = OracleVerdict::Found;
    result.embedding = std::move(s.image);
  } else {
    result.verdict = s.exhausted ? OracleVerdict::BudgetExhausted : OracleVerdict::NotContained;
  }
  return result;
}

}  // namespace perturb
