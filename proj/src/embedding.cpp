#include "perturb/embedding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace perturb {

PartialEmbedding::PartialEmbedding(std::size_t target_count, std::size_t host_count)
    : forward_(target_count, kNone), inverse_(host_count, kNone) {}

void PartialEmbedding::map(Vertex a, Vertex x) {
  if (forward_.at(a) != kNone) {
    throw std::logic_error("map: target vertex " + std::to_string(a) + " already mapped");
  }
  if (inverse_.at(x) != kNone) {
    throw std::logic_error("map: host vertex " + std::to_string(x) + " already covered");
  }
  forward_[a] = x;
  inverse_[x] = a;
  ++mapped_;
}

void PartialEmbedding::unmap(Vertex a) {
  Vertex x = forward_.at(a);
  if (x == kNone) return;
  forward_[a] = kNone;
  inverse_[x] = kNone;
  --mapped_;
}

void PartialEmbedding::relocate(Vertex a, Vertex x) {
  if (forward_.at(a) == kNone) throw std::logic_error("relocate: vertex not mapped");
  if (inverse_.at(x) != kNone) throw std::logic_error("relocate: destination covered");
  inverse_[forward_[a]] = kNone;
  forward_[a] = x;
  inverse_[x] = a;
}

bool PartialEmbedding::is_valid(const Graph& target, const Graph& host) const {
  if (target.vertex_count() != forward_.size() || host.vertex_count() != inverse_.size()) {
    return false;
  }
  std::size_t count = 0;
  for (Vertex a = 0; a < forward_.size(); ++a) {
    if (forward_[a] == kNone) continue;
    ++count;
    if (forward_[a] >= inverse_.size() || inverse_[forward_[a]] != a) return false;
  }
  if (count != mapped_) return false;
  for (Vertex x = 0; x < inverse_.size(); ++x) {
    if (inverse_[x] != kNone && forward_[inverse_[x]] != x) return false;
  }
  for (auto [a, b] : target.edges()) {
    if (mapped(a) && mapped(b) && !host.has_edge(forward_[a], forward_[b])) return false;
  }
  return true;
}

std::vector<Vertex> PartialEmbedding::broken_vertices(const Graph& target, const Graph& host,
                                                      std::span<const Vertex> candidates) const {
  std::vector<Vertex> out;
  for (Vertex a : candidates) {
    if (!mapped(a)) continue;
    for (Vertex b : target.neighbors(a)) {
      if (mapped(b) && !host.has_edge(forward_[a], forward_[b])) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

VertexSet PartialEmbedding::image_set() const {
  VertexSet out;
  for (Vertex x = 0; x < inverse_.size(); ++x) {
    if (inverse_[x] != kNone) out.push_back(x);
  }
  return out;
}

VertexSet PartialEmbedding::uncovered() const {
  VertexSet out;
  for (Vertex x = 0; x < inverse_.size(); ++x) {
    if (inverse_[x] == kNone) out.push_back(x);
  }
  return out;
}

Embedding PartialEmbedding::to_embedding() const {
  if (mapped_ != forward_.size()) throw std::logic_error("to_embedding: map is partial");
  return forward_;
}

VertexSet embedded_neighborhood(const PartialEmbedding& emb, const Graph& target, Vertex w) {
  VertexSet out;
  if (!emb.covered(w)) return out;
  for (Vertex b : target.neighbors(emb.preimage(w))) {
    if (emb.mapped(b)) out.push_back(emb.image(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool neighborhood_inside(const PartialEmbedding& emb, const Graph& target, const Graph& h,
                         Vertex w, Vertex v) {
  for (Vertex b : target.neighbors(emb.preimage(w))) {
    if (emb.mapped(b) && !h.has_edge(emb.image(b), v)) return false;
  }
  return true;
}

}  // namespace

VertexSet reservoir_set(const PartialEmbedding& emb, const Graph& target, const Graph& h,
                        Vertex v) {
  VertexSet out;
  for (Vertex w = 0; w < emb.host_count(); ++w) {
    if (emb.covered(w) && neighborhood_inside(emb, target, h, w, v)) out.push_back(w);
  }
  return out;
}

VertexSet reservoir_set(const PartialEmbedding& emb, const Graph& target, const Graph& h,
                        Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("reservoir_set: u == v");
  VertexSet out;
  for (Vertex w : h.neighbors(u)) {
    if (emb.covered(w) && neighborhood_inside(emb, target, h, w, v)) out.push_back(w);
  }
  return out;
}

void ReservoirIndex::track(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("ReservoirIndex::track: u == v");
  pairs_.emplace_back(u, v);
  sets_.emplace_back();
  fresh_ = false;
}

void ReservoirIndex::sample_pairs(std::size_t host_count, std::size_t count, Rng& rng) {
  if (host_count < 2) return;
  for (std::size_t i = 0; i < count; ++i) {
    Vertex u = static_cast<Vertex>(rng.below(host_count));
    Vertex v = static_cast<Vertex>(rng.below(host_count - 1));
    if (v >= u) ++v;
    track(u, v);
  }
}

std::size_t ReservoirIndex::refresh(const PartialEmbedding& emb, const Graph& target,
                                    const Graph& h) {
  std::size_t drop = 0;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    VertexSet next = reservoir_set(emb, target, h, pairs_[i].first, pairs_[i].second);
    if (fresh_ && next.size() < sets_[i].size()) {
      drop = std::max(drop, sets_[i].size() - next.size());
    }
    sets_[i] = std::move(next);
  }
  fresh_ = true;
  worst_decrement_ = std::max(worst_decrement_, drop);
  return drop;
}

std::size_t ReservoirIndex::min_size() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& s : sets_) best = std::min(best, s.size());
  return sets_.empty() ? 0 : best;
}

}  // namespace perturb
