#pragma once

#include <span>
#include <vector>

namespace sebn {

/// Horseshoe scales for GP amplitudes: one for GP terms sitting on an expert
/// linear edge, one for GP terms on pairs the expert left unconnected.
struct HsScaleMap {
  double tau_expert = 5.0;
  double tau_nonexpert = 5.0;

  static HsScaleMap uniform(double tau) { return {tau, tau}; }
  void validate() const;
  bool operator==(const HsScaleMap&) const = default;
};

/// Closed-form Horseshoe log-prior over amplitudes s_i with per-entry scales t_i:
///   sum_i [ log(t_i / sqrt(s_i^2 + t_i^2)) - log(1 + t_i^2 / s_i^2) ] - (p/2) log 2 pi
/// A zero amplitude yields -infinity.
double hs_log_prior(std::span<const double> amplitudes, std::span<const double> scales);

/// d hs_log_prior / d s_i.
std::vector<double> hs_log_prior_grad(std::span<const double> amplitudes, std::span<const double> scales);

}  // namespace sebn
