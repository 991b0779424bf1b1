#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perturb/decompose.hpp"
#include "perturb/embedding.hpp"
#include "perturb/errors.hpp"
#include "perturb/graph.hpp"
#include "perturb/oracle.hpp"
#include "perturb/params.hpp"
#include "perturb/reservoir.hpp"
#include "perturb/search.hpp"

namespace perturb {

struct MiddleOptions {
  std::uint64_t search_budget = 200'000;
  /// Ejections of already placed cycles allowed per target vertex.
  std::size_t repairs_per_vertex = 5;
  /// Give up after max(40, |f_mid| / stall_divisor) repairs without a new
  /// low in the number of unplaced cycles.
  std::size_t stall_divisor = 2;
};

/// Step 2. Paths of f_mid go onto consecutive segments of one long path in
/// g - occupied; cycles are then placed longest first, each through the free
/// vertex of smallest free degree. When no cycle through that vertex exists,
/// one or two placed cycles next to it may be ejected and requeued; failing
/// that, the vertex is skipped while the spare budget allows, and beyond it a
/// random nearby cycle is kicked out. Swaps and kicks share one budget.
/// Returns a map from f_mid's vertices into V(g).
PartialEmbedding embed_middle(const Graph& f_mid, const Graph& g, const VertexSet& occupied,
                              const ParamSet& params, std::uint64_t seed,
                              const MiddleOptions& options = {});

enum class IncrementKind { Pair, Triangle };

// One switching step: an isolated edge w1w2 of F[V \ W], each end with at most
// one anchor (its F-neighbour in W), or an isolated triangle.
struct Increment {
  IncrementKind kind = IncrementKind::Pair;
  std::vector<Vertex> vertices;
  std::array<std::optional<Vertex>, 2> anchors;
};

struct SwitchPlan {
  std::vector<Increment> increments;
  /// Index of the first triangle increment (== increments.size() if none).
  std::size_t t_prime = 0;
};

/// Pair increments first, triangles last. Throws std::invalid_argument when
/// F[V \ W] is not a disjoint union of edges and triangles, or holds a
/// triangle while ell > 3.
SwitchPlan build_switch_plan(const Graph& f, const Decomposition& d, std::size_t ell);

/// |V \ W|/3 - 1 <= t <= |V \ W|/2 + 1.
bool switch_count_in_range(std::size_t t, std::size_t out_size);

struct SwitchContext {
  const Graph& target;  // the whole (maximal) target
  const Graph& h;
  const Graph& g;
  std::size_t floor = 0;  // reservoir floor in vertices
  std::size_t tries = 12;
};

struct SwitchAudit {
  IncrementKind kind = IncrementKind::Pair;
  /// Host vertices covered before the step whose embedded neighbourhood changed.
  std::size_t changed = 0;
  bool valid = false;
  std::size_t reservoir_drop = 0;
};

/// Frees w~1, w~2 from B(u~1, v~1) and B(u~2, v~2) joined by a G-edge: their
/// occupants move to the uncovered v~1, v~2 and the increment takes their
/// place. Mutates `emb` only on success. Throws EmbeddingError with
/// ReservoirUnderflow or NoSwitchEdge.
SwitchAudit switch_insert_pair(PartialEmbedding& emb, ReservoirIndex& index,
                               const SwitchContext& ctx, const Increment& inc,
                               std::uint64_t seed);

/// Same for a triangle w~1 w~2 w~3 of G with w~j in B(v~j). Throws
/// EmbeddingError with ReservoirUnderflow or NoRainbowTriangle.
SwitchAudit switch_insert_triangle(PartialEmbedding& emb, ReservoirIndex& index,
                                   const SwitchContext& ctx, const Increment& inc,
                                   std::uint64_t seed);

struct FailureReport {
  Stage stage = Stage::Verify;
  FailureKind kind = FailureKind::VerificationFailure;
  std::string reason;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t u_size = 0;
  std::size_t middle_size = 0;
  std::size_t out_size = 0;

  /// stage=...;kind=...;seed=...;n=...;u=...;w_minus_u=...;v_minus_w=...;reason=...
  std::string to_text() const;
};

struct EmbedOptions {
  bool validate_params = true;
  /// Called after every switching step with the audit and the current map.
  std::function<void(const SwitchAudit&, const PartialEmbedding&)> on_switch;
};

struct EmbedResult {
  bool success = false;
  Embedding embedding;
  std::size_t attempts = 0;
  std::optional<FailureReport> failure;  // last failure (the reason on overall failure)
  std::vector<SwitchAudit> audits;       // all attempts
  std::optional<Decomposition> decomposition;

  std::size_t retries() const { return attempts == 0 ? 0 : attempts - 1; }
};

/// Spanning embedding of f into g ∪ g_alpha: augment f to a maximal target,
/// decompose, Step 1 on F[U], Step 2 on F[W \ U], switching for F[V \ W],
/// verify. In practical mode a split that misses the |V \ W| target is redone
/// with relax_out_size. Stage failures are retried with derived seeds up to
/// params.retry_budget attempts. Throws std::invalid_argument on bad input.
EmbedResult embed_full(const Graph& f, const Graph& g, const Graph& g_alpha,
                       const ParamSet& params, std::uint64_t seed,
                       const EmbedOptions& options = {});

}  // namespace perturb
