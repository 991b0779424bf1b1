#include "perturb/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace perturb {

namespace {
constexpr double kSlack = 1e-12;
}

std::vector<std::string> ParamSet::violations() const {
  std::vector<std::string> out;
  auto fail = [&](const std::string& what) { out.push_back(what); };
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must lie in (0, 1]");
  if (!(beta > 0.0)) fail("beta must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (!(p >= 0.0 && p <= 1.0)) fail("p must lie in [0, 1]");
  if (ell < 3) fail("ell must be at least 3");
  if (!(u_fraction > 0.0)) fail("u_fraction must be positive");
  if (!(reservoir_floor >= 0.0 && reservoir_floor <= 1.0)) {
    fail("reservoir_floor must lie in [0, 1]");
  }
  if (20.0 * beta > alpha + kSlack) fail("20*beta <= alpha violated");
  if (practical_mode) {
    if (epsilon > beta + kSlack) fail("epsilon <= beta violated (practical mode)");
    if (ell0 < 3) fail("ell0 >= 3 violated (practical mode)");
  } else {
    const double eps_max = 1e-4 * alpha * alpha * alpha * beta / 2.0;
    if (epsilon > eps_max * (1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "epsilon <= 1e-4*alpha^3*beta/2 = " << eps_max << " violated";
      fail(msg.str());
    }
    if (static_cast<double>(ell0) * epsilon < 10.0 - 1e-9) {
      fail("ell0 >= 10/epsilon violated");
    }
  }
  return out;
}

void ParamSet::validate() const {
  auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw std::invalid_argument(msg);
}

std::size_t ParamSet::scaled(double fraction) const {
  const double x = fraction * static_cast<double>(n);
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::llround(x));
}

std::size_t ParamSet::tolerance() const {
  if (tolerance_override > 0) return tolerance_override;
  if (!practical_mode) return 2;
  return std::max<std::size_t>(2, (n + 499) / 500);
}

std::size_t ParamSet::reservoir_floor_count() const {
  return static_cast<std::size_t>(std::ceil(reservoir_floor * static_cast<double>(n) - 1e-9));
}

ParamSet ParamSet::practical(std::size_t n, double alpha, std::size_t ell, double p) {
  ParamSet ps;
  ps.n = n;
  ps.alpha = alpha;
  ps.beta = alpha / 20.0;
  ps.epsilon = ps.beta;
  ps.ell = ell;
  ps.ell0 = std::max<std::size_t>(ell + 1, n + 1);
  ps.p = p;
  ps.practical_mode = true;
  return ps;
}

}  // namespace perturb
