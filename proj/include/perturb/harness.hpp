#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/instance.hpp"

namespace perturb {

enum class HostKind { Bipartite, RandomDense, File };
enum class TargetKind { Spec, RandomSpec, AllSpecs };

std::string to_string(HostKind kind);
std::string to_string(TargetKind kind);
HostKind parse_host_kind(const std::string& text);
TargetKind parse_target_kind(const std::string& text);

// Scale for p-grid entries: "abs", "1/n", "girth" (n^{-(ell-1)/ell}) or
// "n^-a/b" for any rational exponent, e.g. "n^-2/3".
struct PUnit {
  enum class Kind { Absolute, Linear, Girth, Power } kind = Kind::Absolute;
  double exponent = 0.0;  // Power only

  static PUnit parse(const std::string& text);
  double scale(std::size_t n, std::size_t ell) const;
  std::string to_string() const;
};

/// Spec text, or "factorK" for floor(n/K) disjoint K-cycles; a remainder r
/// becomes a path on r vertices when r < ell, else the last cycle grows.
CycleTypeSpec resolve_spec(const std::string& text, std::size_t n, std::size_t ell);

// One fully resolved cell of a sweep.
struct TrialConfig {
  std::size_t n = 0;
  double p = 0.0;  // absolute
  double alpha = 0.1;
  std::size_t ell = 3;
  std::size_t ell0 = 0;  // 0: practical default
  HostKind host = HostKind::Bipartite;
  std::string host_file;
  CycleTypeSpec spec;
  std::size_t retry_budget = 20;
  std::uint64_t seed = 0;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double p = 0.0;
  double alpha = 0.0;
  std::size_t ell = 0;
  std::string host;
  std::string spec;
  /// "success", or "<stage>:<failure kind>" such as "switch:no-switch-edge".
  /// "unsound" marks a success the independent re-verification rejected.
  std::string outcome;
  std::size_t retries = 0;
  double ms = 0.0;

  bool success() const { return outcome == "success"; }
};

/// G_alpha for the config. Bipartite hosts are K_{a,n-a} with a = round(alpha n);
/// file hosts are read from host_file.
Graph build_host(const TrialConfig& cfg);

/// Alpha actually certified by the host: its minimum degree over n, capped
/// at the requested alpha.
double effective_alpha(const Graph& g_alpha, double requested);

/// Builds G_alpha and G(n, p) (seed derive_seed(seed, 1)), embeds the spec
/// with seed derive_seed(seed, 2), re-verifies a success. Throws only on
/// invalid configuration.
TrialRecord run_trial(const TrialConfig& cfg);

struct SweepConfig {
  std::vector<std::size_t> n_grid{300};
  std::vector<double> p_grid{1.0};
  PUnit p_unit;
  std::vector<double> alpha_grid{0.1};
  std::vector<std::size_t> ell_grid{3};
  std::size_t ell0 = 0;
  std::size_t trials = 10;
  std::uint64_t base_seed = 1;
  HostKind host = HostKind::Bipartite;
  std::string host_file;
  TargetKind target = TargetKind::Spec;
  std::string spec = "factor3";
  std::size_t retry_budget = 20;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Throws std::invalid_argument on empty grids, zero trials, bad values.
  void validate() const;
};

struct CellAggregate {
  std::size_t n = 0;
  double p = 0.0;
  double alpha = 0.0;
  std::size_t ell = 0;
  std::string host;
  std::string spec;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double mean_retries = 0.0;  // over successful trials

  double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

struct SweepResult {
  std::vector<TrialRecord> records;
  std::vector<CellAggregate> aggregates;
};

/// Cells in grid order n, p, alpha, ell (then spec for all-specs); trial seeds
/// derive_seed(base_seed, cell, trial). Work is spread over threads but the
/// result is in index order and, apart from ms, identical on every run.
SweepResult sweep(const SweepConfig& cfg);

/// seed,n,p,alpha,ell,host,spec,outcome,retries,ms
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
/// n,p,alpha,ell,host,spec,trials,successes,rate,mean_retries
void write_aggregates_csv(std::ostream& out, const std::vector<CellAggregate>& cells);

/// Rates nondecreasing along the list up to two binomial standard errors of
/// the difference, checked over every ordered pair of cells.
bool monotone_within_band(const std::vector<CellAggregate>& cells);

}  // namespace perturb
