#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/rng.hpp"

namespace perturb {

/// Simple path in g avoiding `avoid` with at least `min_len` edges, by
/// rotation-extension (extend towards the neighbour with fewest free
/// neighbours, rotate when both ends are stuck) with random restarts.
/// Throws EmbeddingError(LongPathFailure) when every restart falls short.
std::vector<Vertex> find_long_path(const Graph& g, const VertexSet& avoid, std::size_t min_len,
                                   std::uint64_t seed, std::size_t restarts = 50);

/// A k-cycle through `start` inside the vertices with allowed[v] != 0, listed
/// from `start`. Short cycles (k <= 8) use a depth-first search that tries
/// poorly connected vertices first; longer ones grow a
/// path by rotation-extension and close it by rotations and end swaps.
/// std::nullopt when nothing is found within `budget` steps.
std::optional<std::vector<Vertex>> find_cycle_through(const Graph& g,
                                                      const std::vector<char>& allowed,
                                                      Vertex start, std::size_t k, Rng& rng,
                                                      std::uint64_t budget = 200'000);

}  // namespace perturb
