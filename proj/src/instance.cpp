#include "perturb/instance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace perturb {

std::size_t CycleTypeSpec::vertex_count() const {
  std::size_t total = path_length ? *path_length + 1 : 0;
  for (auto len : cycle_lengths) total += len;
  return total;
}

std::size_t CycleTypeSpec::min_cycle_length() const {
  if (cycle_lengths.empty()) return 0;
  return *std::min_element(cycle_lengths.begin(), cycle_lengths.end());
}

void CycleTypeSpec::normalize() {
  std::sort(cycle_lengths.begin(), cycle_lengths.end(), std::greater<>());
}

bool CycleTypeSpec::in_maximal_family(std::size_t ell) const {
  for (auto len : cycle_lengths) {
    if (len < ell) return false;
  }
  return !path_length || *path_length + 2 <= ell;
}

std::string CycleTypeSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < cycle_lengths.size();) {
    std::size_t j = i;
    while (j < cycle_lengths.size() && cycle_lengths[j] == cycle_lengths[i]) ++j;
    if (i > 0) out += ',';
    out += 'C' + std::to_string(cycle_lengths[i]);
    if (j - i > 2) out += '^' + std::to_string(j - i);
    else if (j - i == 2) out += ",C" + std::to_string(cycle_lengths[i]);
    i = j;
  }
  if (path_length) {
    if (!cycle_lengths.empty()) out += ';';
    out += 'P' + std::to_string(*path_length);
  }
  return out;
}

namespace {

std::size_t parse_count(std::string_view token, std::string_view whole) {
  if (token.empty()) {
    throw ParseError("cycle spec '" + std::string(whole) + "': missing number");
  }
  std::size_t value = 0;
  for (char c : token) {
    if (c < '0' || c > '9') {
      throw ParseError("cycle spec '" + std::string(whole) + "': bad number '" +
                       std::string(token) + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

CycleTypeSpec CycleTypeSpec::parse(std::string_view text) {
  CycleTypeSpec spec;
  const std::string_view whole = text;
  text = trim(text);
  std::string_view cycles = text;
  std::string_view path;
  if (auto semi = text.find(';'); semi != std::string_view::npos) {
    cycles = trim(text.substr(0, semi));
    path = trim(text.substr(semi + 1));
    if (path.empty()) throw ParseError("cycle spec '" + std::string(whole) + "': empty path part");
  } else if (!text.empty() && (text.front() == 'P' || text.front() == 'p')) {
    cycles = {};
    path = text;
  }
  while (!cycles.empty()) {
    auto comma = cycles.find(',');
    std::string_view token = trim(cycles.substr(0, comma));
    if (token.size() < 2 || (token.front() != 'C' && token.front() != 'c')) {
      throw ParseError("cycle spec '" + std::string(whole) + "': expected Ck, got '" +
                       std::string(token) + "'");
    }
    std::string_view body = token.substr(1);
    std::size_t copies = 1;
    if (auto caret = body.find('^'); caret != std::string_view::npos) {
      copies = parse_count(body.substr(caret + 1), whole);
      body = body.substr(0, caret);
      if (copies == 0) throw ParseError("cycle spec '" + std::string(whole) + "': zero copies");
    }
    std::size_t len = parse_count(body, whole);
    if (len < 3) {
      throw ParseError("cycle spec '" + std::string(whole) + "': cycle length below 3");
    }
    spec.cycle_lengths.insert(spec.cycle_lengths.end(), copies, len);
    if (comma == std::string_view::npos) break;
    cycles.remove_prefix(comma + 1);
    if (trim(cycles).empty()) throw ParseError("cycle spec '" + std::string(whole) + "': trailing comma");
  }
  if (!path.empty()) {
    if (path.front() != 'P' && path.front() != 'p') {
      throw ParseError("cycle spec '" + std::string(whole) + "': expected Pk after ';'");
    }
    spec.path_length = parse_count(path.substr(1), whole);
  }
  if (spec.cycle_lengths.empty() && !spec.path_length) {
    throw ParseError("cycle spec '" + std::string(whole) + "' is empty");
  }
  spec.normalize();
  return spec;
}

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p outside [0, 1]");
  Rng rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) g.add_edge(u, v);
    }
  }
  return g;
}

Graph make_bipartite_host(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw std::invalid_argument("make_bipartite_host: alpha must lie in (0, 1/2]");
  }
  const auto a = static_cast<std::size_t>(std::llround(alpha * static_cast<double>(n)));
  if (a == 0 || a >= n) {
    throw std::invalid_argument("make_bipartite_host: part of size 0 for n=" +
                                std::to_string(n));
  }
  Graph g(n);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = static_cast<Vertex>(a); v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph make_random_dense_host(std::size_t n, double alpha, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("make_random_dense_host: alpha must lie in (0, 1)");
  }
  const auto need = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
  if (need >= n) throw std::invalid_argument("make_random_dense_host: alpha*n >= n");
  Graph g = sample_gnp(n, alpha, derive_seed(seed, 0));
  Rng rng(derive_seed(seed, 1));
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) >= need) continue;
    std::vector<Vertex> candidates;
    for (Vertex w = 0; w < n; ++w) {
      if (w != v && !g.has_edge(v, w)) candidates.push_back(w);
    }
    rng.shuffle(candidates);
    for (std::size_t i = 0; g.degree(v) < need; ++i) g.add_edge(v, candidates[i]);
  }
  return g;
}

bool min_degree_audit(const Graph& g, double alpha) {
  const double need = alpha * static_cast<double>(g.vertex_count()) - 1e-9;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (static_cast<double>(g.degree(v)) < need) return false;
  }
  return true;
}

Graph build_f_graph(const CycleTypeSpec& spec) {
  Graph f(spec.vertex_count());
  Vertex next = 0;
  for (auto len : spec.cycle_lengths) {
    if (len < 3) throw std::invalid_argument("build_f_graph: cycle length below 3");
    for (Vertex i = 0; i < len; ++i) {
      f.add_edge(next + i, next + static_cast<Vertex>((i + 1) % len));
    }
    next += static_cast<Vertex>(len);
  }
  if (spec.path_length) {
    for (Vertex i = 0; i < *spec.path_length; ++i) f.add_edge(next + i, next + i + 1);
  }
  return f;
}

namespace {

void partitions_into(std::size_t remaining, std::size_t max_part, std::size_t min_part,
                     std::vector<std::size_t>& current,
                     const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (remaining == 0) {
    emit(current);
    return;
  }
  for (std::size_t part = std::min(max_part, remaining); part >= min_part; --part) {
    current.push_back(part);
    partitions_into(remaining - part, part, min_part, current, emit);
    current.pop_back();
  }
}

}  // namespace

std::vector<CycleTypeSpec> enumerate_specs(std::size_t n, std::size_t ell) {
  if (n == 0) throw std::invalid_argument("enumerate_specs: n must be positive");
  if (ell < 3) throw std::invalid_argument("enumerate_specs: ell must be at least 3");
  std::vector<CycleTypeSpec> out;
  // path_vertices == 0 means "no path"; otherwise the path has that many vertices.
  for (std::size_t path_vertices = 0; path_vertices <= std::min(n, ell - 1); ++path_vertices) {
    std::vector<std::size_t> current;
    partitions_into(n - path_vertices, n, ell, current, [&](const auto& parts) {
      CycleTypeSpec spec;
      spec.cycle_lengths = parts;
      if (path_vertices > 0) spec.path_length = path_vertices - 1;
      out.push_back(std::move(spec));
    });
  }
  return out;
}

std::optional<std::size_t> linear_girth(const Graph& f) {
  std::optional<std::size_t> girth;
  for (const auto& comp : linear_components(f)) {
    if (comp.is_cycle && (!girth || comp.vertices.size() < *girth)) {
      girth = comp.vertices.size();
    }
  }
  return girth;
}

Graph augment_to_maximal(const Graph& f, std::size_t ell) {
  if (ell < 3) throw std::invalid_argument("augment_to_maximal: ell must be at least 3");
  if (f.max_degree() > 2) {
    throw std::invalid_argument("augment_to_maximal: maximum degree exceeds 2");
  }
  auto comps = linear_components(f);
  for (const auto& comp : comps) {
    if (comp.is_cycle && comp.vertices.size() < ell) {
      throw std::invalid_argument("augment_to_maximal: girth below ell");
    }
  }
  Graph out = f;
  std::vector<Vertex> chain;
  for (const auto& comp : comps) {
    if (comp.is_cycle) continue;
    if (!chain.empty()) out.add_edge(chain.back(), comp.vertices.front());
    chain.insert(chain.end(), comp.vertices.begin(), comp.vertices.end());
  }
  if (chain.size() >= ell) out.add_edge(chain.back(), chain.front());
  return out;
}

CycleTypeSpec spec_of(const Graph& f) {
  CycleTypeSpec spec;
  for (const auto& comp : linear_components(f)) {
    if (comp.is_cycle) {
      spec.cycle_lengths.push_back(comp.vertices.size());
    } else {
      if (spec.path_length) throw std::invalid_argument("spec_of: more than one path component");
      spec.path_length = comp.length();
    }
  }
  spec.normalize();
  return spec;
}

CycleTypeSpec random_spec(std::size_t n, std::size_t ell, Rng& rng) {
  CycleTypeSpec spec;
  std::size_t remaining = n;
  while (remaining >= ell) {
    const double lo = std::log(static_cast<double>(ell));
    const double hi = std::log(static_cast<double>(remaining) + 1.0);
    auto len = static_cast<std::size_t>(std::exp(lo + (hi - lo) * rng.uniform01()));
    len = std::clamp(len, ell, remaining);
    spec.cycle_lengths.push_back(len);
    remaining -= len;
  }
  if (remaining > 0) spec.path_length = remaining - 1;
  spec.normalize();
  return spec;
}

}  // namespace perturb
