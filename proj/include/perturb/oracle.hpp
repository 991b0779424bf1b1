#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perturb/graph.hpp"

namespace perturb {

/// Total map target vertex -> host vertex, indexed by target vertex.
using Embedding = std::vector<Vertex>;

struct EmbeddingReport {
  bool valid = false;
  bool injective = true;
  bool spanning = false;
  std::vector<Edge> missing_edges;  // target edges whose image is a host non-edge
  std::vector<Vertex> collisions;   // host vertices hit more than once
  std::string error;                // size mismatches and out-of-range images
};

/// Checks injectivity and edge preservation, plus surjectivity onto V(h) when
/// `require_spanning` is set. Violations are listed, never thrown.
EmbeddingReport verify_embedding(const Graph& target, const Graph& h, const Embedding& e,
                                 bool require_spanning);

enum class OracleVerdict { Found, NotContained, BudgetExhausted };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::BudgetExhausted;
  Embedding embedding;  // set when verdict == Found
  std::uint64_t nodes = 0;
};

/// Exhaustive backtracking containment test for max-degree-2 targets.
/// NotContained is a proof; BudgetExhausted is inconclusive.
OracleResult oracle_embed(const Graph& target, const Graph& h, bool require_spanning,
                          std::uint64_t node_budget = 50'000'000);

/// Max degree <= 2 and girth >= ell; with `maximal`, also cycles plus at most
/// one path, of length <= ell - 2.
bool verify_family_membership(const Graph& f, std::size_t ell, bool maximal);

std::string to_string(OracleVerdict verdict);

}  // namespace perturb
