#include "perturb/errors.hpp"

namespace perturb {

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::InfeasibleDecomposition: return "infeasible-decomposition";
    case FailureKind::CenterCapacity: return "center-capacity";
    case FailureKind::PlacementFailure: return "placement-failure";
    case FailureKind::ClosureFailure: return "closure-failure";
    case FailureKind::ReservoirAudit: return "reservoir-audit";
    case FailureKind::LongPathFailure: return "long-path-failure";
    case FailureKind::CycleSearchFailure: return "cycle-search-failure";
    case FailureKind::ReservoirUnderflow: return "reservoir-underflow";
    case FailureKind::NoSwitchEdge: return "no-switch-edge";
    case FailureKind::NoRainbowTriangle: return "no-rainbow-triangle";
    case FailureKind::VerificationFailure: return "verification-failure";
  }
  return "unknown";
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Decompose: return "decompose";
    case Stage::Core: return "core";
    case Stage::Middle: return "middle";
    case Stage::Switch: return "switch";
    case Stage::Verify: return "verify";
  }
  return "unknown";
}

Stage stage_of(FailureKind kind) {
  switch (kind) {
    case FailureKind::InfeasibleDecomposition: return Stage::Decompose;
    case FailureKind::CenterCapacity:
    case FailureKind::PlacementFailure:
    case FailureKind::ClosureFailure:
    case FailureKind::ReservoirAudit: return Stage::Core;
    case FailureKind::LongPathFailure:
    case FailureKind::CycleSearchFailure: return Stage::Middle;
    case FailureKind::ReservoirUnderflow:
    case FailureKind::NoSwitchEdge:
    case FailureKind::NoRainbowTriangle: return Stage::Switch;
    case FailureKind::VerificationFailure: return Stage::Verify;
  }
  return Stage::Verify;
}

}  // namespace perturb
