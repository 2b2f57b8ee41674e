#include "sebn/horseshoe.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sebn/errors.hpp"

namespace sebn {

void HsScaleMap::validate() const {
  if (!(tau_expert > 0.0) || !(tau_nonexpert > 0.0) || !std::isfinite(tau_expert) || !std::isfinite(tau_nonexpert))
    throw ContractViolation("HsScaleMap: scales must be positive and finite");
}

namespace {

void check(std::span<const double> amplitudes, std::span<const double> scales) {
  if (amplitudes.size() != scales.size()) throw ContractViolation("horseshoe: amplitude/scale length mismatch");
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (!(amplitudes[i] >= 0.0) || !std::isfinite(amplitudes[i]))
      throw ContractViolation("horseshoe: amplitudes must be nonnegative and finite");
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) throw ContractViolation("horseshoe: scales must be positive");
  }
}

}  // namespace

double hs_log_prior(std::span<const double> amplitudes, std::span<const double> scales) {
  check(amplitudes, scales);
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  double total = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double s = amplitudes[i];
    const double t = scales[i];
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    const double s2 = s * s;
    const double t2 = t * t;
    total += std::log(t) - 0.5 * std::log(s2 + t2) - std::log1p(t2 / s2) - half_log_2pi;
  }
  return total;
}

std::vector<double> hs_log_prior_grad(std::span<const double> amplitudes, std::span<const double> scales) {
  check(amplitudes, scales);
  std::vector<double> grad(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double s = amplitudes[i];
    const double t = scales[i];
    if (s == 0.0) {
      grad[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    // -s/(s^2+t^2) from the first term, 2/s - 2s/(s^2+t^2) from the second.
    grad[i] = 2.0 / s - 3.0 * s / (s * s + t * t);
  }
  return grad;
}

}  // namespace sebn
