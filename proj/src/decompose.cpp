#include "perturb/decompose.hpp"

#include <algorithm>
#include "json.hpp"
#include <numeric>

#include "perturb/errors.hpp"
#include "perturb/oracle.hpp"

namespace perturb {

namespace {

enum class Region : unsigned char { Core, Middle, Out };

std::string sizes_note(std::size_t have, std::size_t target, std::size_t tol) {
  return std::to_string(have) + " (target " + std::to_string(target) + " ± " +
         std::to_string(tol) + ")";
}

}  // namespace

VertexSet Decomposition::w_minus_u() const {
  VertexSet out;
  std::set_difference(w_set.begin(), w_set.end(), u_set.begin(), u_set.end(),
                      std::back_inserter(out));
  return out;
}

VertexSet Decomposition::v_minus_w() const {
  VertexSet out;
  auto it = w_set.begin();
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (it != w_set.end() && *it == v) {
      ++it;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

std::string Decomposition::to_json() const {
  nlohmann::json j;
  j["u"] = u_set;
  j["w_minus_u"] = w_minus_u();
  j["v_minus_w"] = v_minus_w();
  j["tolerance"] = tolerance;
  return j.dump();
}

Decomposition decompose(const Graph& f, const ParamSet& params,
                        const DecomposeOptions& options) {
  const std::size_t n = f.vertex_count();
  if (params.n != n) {
    throw std::invalid_argument("decompose: params.n=" + std::to_string(params.n) +
                                " but target has " + std::to_string(n) + " vertices");
  }
  if (!verify_family_membership(f, params.ell, /*maximal=*/true)) {
    throw std::invalid_argument("decompose: target is not edgewise maximal with girth >= ell");
  }
  const std::size_t u_target = params.u_target();
  const std::size_t eps_target = params.eps_target();
  const std::size_t tol = params.tolerance();

  auto comps = linear_components(f);
  std::vector<std::size_t> cycles;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_cycle) cycles.push_back(i);
  }
  std::stable_sort(cycles.begin(), cycles.end(), [&](std::size_t a, std::size_t b) {
    return comps[a].vertices.size() > comps[b].vertices.size();
  });

  std::vector<Region> region(n, Region::Middle);
  std::size_t core_size = 0;
  std::size_t out_size = 0;
  std::size_t trimmed = 0;
  std::vector<char> consumed(comps.size(), 0);

  if (u_target < 3 && !options.allow_empty_core) {
    throw EmbeddingError(FailureKind::InfeasibleDecomposition,
                         "|U| target round(u_fraction*beta*n) = " + std::to_string(u_target) +
                             " is below 3 at n=" + std::to_string(n));
  }
  if (u_target >= 3) {
    std::size_t last = comps.size();
    for (std::size_t idx : cycles) {
      if (core_size >= u_target) break;
      for (Vertex v : comps[idx].vertices) region[v] = Region::Core;
      core_size += comps[idx].vertices.size();
      consumed[idx] = 1;
      last = idx;
    }
    if (core_size + tol < u_target) {
      throw EmbeddingError(FailureKind::InfeasibleDecomposition,
                           "cycles cover only " + std::to_string(core_size) +
                               " vertices, |U| target " + std::to_string(u_target));
    }
    const std::size_t excess = core_size - std::min(core_size, u_target);
    if (excess > tol) {
      // Never cut a run of 3 or 4 vertices.
      const std::size_t run = (excess == 3 || excess == 4) ? 2 : excess;
      const auto& cyc = comps[last].vertices;
      const std::size_t len = cyc.size();
      std::vector<Vertex> cut(cyc.end() - static_cast<std::ptrdiff_t>(run), cyc.end());
      for (Vertex v : cut) region[v] = Region::Middle;
      auto leave_w = [&](Vertex v) {
        region[v] = Region::Out;
        ++out_size;
      };
      leave_w(cut[0]);
      leave_w(cut[1]);
      if (run >= 5) {
        leave_w(cut[run - 2]);
        leave_w(cut[run - 1]);
      }
      core_size -= run;
      trimmed = run;
      (void)len;
    }
  }

  // Cycles of length >= ell0 left in W \ U lose two adjacent vertices.
  for (std::size_t idx : cycles) {
    if (consumed[idx] || comps[idx].vertices.size() < params.ell0) continue;
    region[comps[idx].vertices[0]] = Region::Out;
    region[comps[idx].vertices[1]] = Region::Out;
    out_size += 2;
    consumed[idx] = 1;
  }
  if (!options.relax_out_size && out_size > eps_target + tol) {
    throw EmbeddingError(FailureKind::InfeasibleDecomposition,
                         "|V\\W| after splitting long cycles is " +
                             sizes_note(out_size, eps_target, tol));
  }

  // Whole triangles next.
  for (std::size_t idx : cycles) {
    if (out_size >= eps_target || out_size + 3 > eps_target + tol) break;
    if (consumed[idx] || comps[idx].vertices.size() != 3) continue;
    for (Vertex v : comps[idx].vertices) region[v] = Region::Out;
    out_size += 3;
    consumed[idx] = 1;
  }

  // Then edges whose endpoints have no other neighbour outside W.
  auto isolated_pick = [&](Vertex a, Vertex b) {
    if (region[a] != Region::Middle || region[b] != Region::Middle) return false;
    for (Vertex x : {a, b}) {
      for (Vertex y : f.neighbors(x)) {
        if (y != a && y != b && region[y] == Region::Out) return false;
      }
    }
    return true;
  };
  while (out_size < eps_target && out_size + 2 <= eps_target + tol) {
    bool picked = false;
    for (bool cycles_first : {true, false}) {
    for (const auto& comp : comps) {
      if (comp.is_cycle != cycles_first) continue;
      const auto& vs = comp.vertices;
      const std::size_t edges = comp.is_cycle ? vs.size() : vs.size() - 1;
      for (std::size_t i = 0; i < edges && !picked; ++i) {
        Vertex a = vs[i];
        Vertex b = vs[(i + 1) % vs.size()];
        if (isolated_pick(a, b)) {
          region[a] = region[b] = Region::Out;
          out_size += 2;
          picked = true;
        }
      }
      if (picked) break;
    }
    if (picked) break;
    }
    if (!picked) break;
  }

  if (!options.relax_out_size && (out_size + tol < eps_target || out_size > eps_target + tol)) {
    throw EmbeddingError(FailureKind::InfeasibleDecomposition,
                         "|V\\W| = " + sizes_note(out_size, eps_target, tol));
  }

  Decomposition d;
  d.vertex_count = n;
  d.tolerance = tol;
  d.trimmed_run = trimmed;
  for (Vertex v = 0; v < n; ++v) {
    if (region[v] == Region::Core) d.u_set.push_back(v);
    if (region[v] != Region::Out) d.w_set.push_back(v);
  }
  return d;
}

PartitionProps check_partition_props(const Graph& f, const Decomposition& d,
                                     std::size_t ell0) {
  PartitionProps props;
  const std::size_t n = f.vertex_count();
  auto in_u = membership_mask(n, d.u_set);
  auto in_w = membership_mask(n, d.w_set);

  auto mid = induced_subgraph(f, d.w_minus_u());
  props.p1 = mid.graph.max_degree() <= 2;
  if (props.p1) {
    for (const auto& comp : linear_components(mid.graph)) {
      if (comp.is_cycle && comp.vertices.size() >= ell0) props.p1 = false;
    }
  }

  auto out = induced_subgraph(f, d.v_minus_w());
  props.p2 = out.graph.max_degree() <= 2;
  if (props.p2) {
    for (const auto& comp : linear_components(out.graph)) {
      const bool edge = !comp.is_cycle && comp.vertices.size() == 2;
      const bool triangle = comp.is_cycle && comp.vertices.size() == 3;
      if (!edge && !triangle) props.p2 = false;
    }
  }

  std::size_t u_mid = 0, u_out = 0;
  for (auto [a, b] : f.edges()) {
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      if (!in_u[x]) continue;
      if (in_w[y] && !in_u[y]) ++u_mid;
      if (!in_w[y]) ++u_out;
    }
  }
  props.p3 = u_mid == 0 && u_out <= 2;
  return props;
}

bool edge_partition_audit(const Graph& f, const Decomposition& d) {
  const std::size_t n = f.vertex_count();
  auto in_u = membership_mask(n, d.u_set);
  auto in_w = membership_mask(n, d.w_set);
  for (Vertex u : d.u_set) {
    if (!in_w[u]) return false;
  }
  auto region_of = [&](Vertex v) { return in_u[v] ? 0 : (in_w[v] ? 1 : 2); };
  std::size_t inside[3] = {0, 0, 0};
  std::size_t crossing[3][3] = {};
  for (auto [a, b] : f.edges()) {
    int ra = region_of(a), rb = region_of(b);
    if (ra == rb) {
      ++inside[ra];
    } else {
      ++crossing[std::min(ra, rb)][std::max(ra, rb)];
    }
  }
  const std::size_t induced = induced_subgraph(f, d.u_set).graph.edge_count() +
                              induced_subgraph(f, d.w_minus_u()).graph.edge_count() +
                              induced_subgraph(f, d.v_minus_w()).graph.edge_count();
  const std::size_t cross = crossing[0][1] + crossing[0][2] + crossing[1][2];
  return induced == inside[0] + inside[1] + inside[2] && induced + cross == f.edge_count();
}

}  // namespace perturb
