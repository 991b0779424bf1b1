#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perturb {

enum class FailureKind {
  InfeasibleDecomposition,
  CenterCapacity,
  PlacementFailure,
  ClosureFailure,
  ReservoirAudit,
  LongPathFailure,
  CycleSearchFailure,
  ReservoirUnderflow,
  NoSwitchEdge,
  NoRainbowTriangle,
  VerificationFailure,
};

enum class Stage { Decompose, Core, Middle, Switch, Verify };

std::string_view to_string(FailureKind kind);
std::string_view to_string(Stage stage);
Stage stage_of(FailureKind kind);

// A recoverable failure of one embedding stage. Pipeline code throws these;
// embed_full turns them into failure reports and retries.
class EmbeddingError : public std::runtime_error {
 public:
  EmbeddingError(FailureKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  FailureKind kind() const { return kind_; }
  Stage stage() const { return stage_of(kind_); }

 private:
  FailureKind kind_;
};

}  // namespace perturb
