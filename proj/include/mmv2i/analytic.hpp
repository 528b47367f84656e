#pragma once

#include <optional>

#include "mmv2i/model.hpp"
#include "mmv2i/numerics.hpp"

namespace mmv2i {

struct AnalyticOptions {
  QuadratureSpec quad{};
  // the interference integral runs over a finite window of this length, the
  // remainder is added as a closed-form power-law tail
  double interference_window_m = 50e3;
  // rate integration over log(1 + threshold): the upper limit grows until
  // coverage falls below this cutoff
  double rate_tail_cutoff = 1e-8;
  QuadratureSpec rate_quad{.rel_tol = 1e-7, .abs_tol = 1e-12,
                           .max_intervals = 2000};
};

// Closed-form network metrics for a receiver served by the minimum-loss
// roadside unit of a marked linear Poisson deployment. Instances cache
// intermediate results and are not thread-safe; use one per thread.
class AnalyticModel {
 public:
  explicit AnalyticModel(Scenario sc, AnalyticOptions opt = {});

  const Scenario& scenario() const { return sc_; }

  // probability that the serving link is in the given state
  double association_probability(LinkState s) const;
  double p_los() const { return association_probability(LinkState::los); }

  // serving-link law, expressed in the along-road coordinate x (the radial
  // distance is sqrt(x^2 + W^2)); density of the event {serving state = s,
  // along-road distance in dx}
  double serving_density_along(LinkState s, double x) const;
  // P[serving radial distance <= r], both states combined
  double serving_cdf(double r) const;

  // nearest unit of the given state alone (no competition from the other
  // state); defective when that state thins out with distance
  double nearest_density_along(LinkState s, double x) const;

  // E[exp(-t I_s)] where I_s is the normalized interference from state-s
  // transmitters beyond along-road distance x0
  double interference_laplace(LinkState s, double t, double x0) const;

  double coverage_probability() const;  // at the scenario threshold
  double coverage_probability(double threshold) const;

  // serving-beam footprint geometry
  double footprint(double r) const;
  double max_footprint_radius() const;  // footprint == speed * slot there
  double footprint_cdf(double length_m) const;
  double no_leave_probability() const;  // footprint outlasts the slot

  double connectivity_probability() const;  // coverage * no-leave

  double mean_rate() const;       // ergodic rate, bit/s
  double mean_comm_time() const;  // expected served time per slot, s
  double throughput() const;      // rate * comm-time / slot, bit/s

 private:
  double laplace_exponent(LinkState s, double t, double x0) const;
  double coverage_integrand(LinkState s, double threshold, double x) const;

  Scenario sc_;
  AnalyticOptions opt_;
  mutable std::optional<double> r_star_;
  mutable std::optional<std::array<double, 2>> assoc_;
};

}  // namespace mmv2i
