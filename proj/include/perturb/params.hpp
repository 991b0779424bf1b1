#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace perturb {

// Constants of the embedding construction.
//
// Strict mode enforces the asymptotic constraints
//   20*beta <= alpha,  epsilon <= 1e-4 * alpha^3 * beta / 2,  ell0 >= 10/epsilon,
// which leave epsilon*n < 1 for any n that fits in memory. Practical mode keeps
// the ordering (20*beta <= alpha, epsilon <= beta) and only asks ell0 >= 3.
struct ParamSet {
  std::size_t n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  std::size_t ell = 3;
  std::size_t ell0 = 3;
  double p = 0.0;
  bool practical_mode = true;
  std::size_t retry_budget = 20;
  /// Reservoir floor as a fraction of n (the role of 10*epsilon in strict mode).
  double reservoir_floor = 0.0;
  /// |U| target is round(u_fraction * beta * n).
  double u_fraction = 10.0;
  /// Size slack for |U| and |V \ W|; 0 selects the mode default.
  std::size_t tolerance_override = 0;

  /// Human-readable list of violated constraints; empty when valid.
  std::vector<std::string> violations() const;
  /// Throws std::invalid_argument listing every violation.
  void validate() const;

  /// round(fraction * n), round half away from zero.
  std::size_t scaled(double fraction) const;
  /// 2 in strict mode, max(2, ceil(n/500)) in practical mode.
  std::size_t tolerance() const;
  std::size_t u_target() const { return scaled(u_fraction * beta); }
  std::size_t eps_target() const { return scaled(epsilon); }
  std::size_t reservoir_floor_count() const;

  /// Largest practical constants for (n, alpha, ell, p): beta = alpha/20,
  /// epsilon = beta, ell0 = n + 1 (no cycle is long enough to be split).
  static ParamSet practical(std::size_t n, double alpha, std::size_t ell, double p);
};

}  // namespace perturb
