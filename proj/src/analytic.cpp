#include "mmv2i/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmv2i {

AnalyticModel::AnalyticModel(Scenario sc, AnalyticOptions opt)
    : sc_(sc), opt_(opt) {
  if (sc_.bs_density_per_m <= 0)
    throw DomainError("AnalyticModel: deployment density must be positive");
  if (sc_.road_half_width_m <= 0)
    throw DomainError("AnalyticModel: road half-width must be positive");
  if (sc_.fading_mean <= 0)
    throw DomainError("AnalyticModel: fading mean must be positive");
  for (LinkState s : kLinkStates)
    if (sc_.path_loss.exponent[index_of(s)] <= 1.0)
      throw DomainError(
          "AnalyticModel: path-loss exponents must exceed 1 for the "
          "interference tail to converge");
}

double AnalyticModel::serving_density_along(LinkState s, double x) const {
  const double lam2 = 2.0 * sc_.bs_density_per_m;
  const double r = sc_.radial_distance(x);
  const double cross = sc_.along_distance(
      equal_loss_distance(sc_.path_loss, s, r));
  const LinkState o = other_state(s);
  return lam2 * sc_.blockage.p_state(s, x) *
         std::exp(-lam2 * sc_.blockage.integrated(s, x) -
                  lam2 * sc_.blockage.integrated(o, cross));
}

double AnalyticModel::nearest_density_along(LinkState s, double x) const {
  const double lam2 = 2.0 * sc_.bs_density_per_m;
  return lam2 * sc_.blockage.p_state(s, x) *
         std::exp(-lam2 * sc_.blockage.integrated(s, x));
}

double AnalyticModel::association_probability(LinkState s) const {
  if (!assoc_) {
    std::array<double, 2> a{};
    for (LinkState st : kLinkStates) {
      auto dens = [&](double x) { return serving_density_along(st, x); };
      a[index_of(st)] = integrate_to_infinity(dens, 0.0, opt_.quad).value;
    }
    assoc_ = a;
  }
  return (*assoc_)[index_of(s)];
}

double AnalyticModel::serving_cdf(double r) const {
  const double x_hi = sc_.along_distance(r);
  if (x_hi <= 0) return 0.0;
  auto dens = [&](double x) {
    return serving_density_along(LinkState::los, x) +
           serving_density_along(LinkState::nlos, x);
  };
  return integrate(dens, 0.0, x_hi, opt_.quad).value;
}

double AnalyticModel::laplace_exponent(LinkState s, double t,
                                       double x0) const {
  if (t < 0) throw DomainError("interference_laplace: t must be nonnegative");
  if (t == 0) return 0.0;
  const auto i = index_of(s);
  const double alpha = sc_.path_loss.exponent[i];
  const double gain = sc_.path_loss.ref_gain[i];
  const auto atoms = sc_.antenna.interferer_gains();
  double scaled[2];
  for (int k = 0; k < 2; ++k)
    scaled[k] = t * sc_.fading_mean * atoms[k].gain * gain;

  auto integrand = [&](double x) {
    const double v = sc_.radial_distance(x);
    const double va = std::pow(v, alpha);
    double sum = 0;
    for (int k = 0; k < 2; ++k)
      sum += atoms[k].prob * scaled[k] / (va + scaled[k]);
    return sc_.blockage.p_state(s, x) * sum;
  };

  const double x_end = x0 + opt_.interference_window_m;
  const double window = integrate(integrand, x0, x_end, opt_.quad).value;

  // beyond the window the fraction behaves as s_k * v^-alpha and the state
  // probability has reached its limit, so the remainder integrates in
  // closed form
  const double p_inf = s == LinkState::los ? sc_.blockage.p_los_limit()
                                           : 1.0 - sc_.blockage.p_los_limit();
  double tail = 0;
  for (int k = 0; k < 2; ++k)
    tail += atoms[k].prob * scaled[k] *
            std::pow(x_end, 1.0 - alpha) / (alpha - 1.0);
  tail *= p_inf;

  return 2.0 * sc_.bs_density_per_m * (window + tail);
}

double AnalyticModel::interference_laplace(LinkState s, double t,
                                           double x0) const {
  return std::exp(-laplace_exponent(s, t, x0));
}

double AnalyticModel::coverage_integrand(LinkState s, double threshold,
                                         double x) const {
  const double dens = serving_density_along(s, x);
  if (dens <= 0) return 0.0;
  const auto i = index_of(s);
  const double r = sc_.radial_distance(x);
  const double t = sc_.fading_mean * threshold * std::pow(r, sc_.path_loss.exponent[i]) /
                   (sc_.antenna.peak_gain() * sc_.path_loss.ref_gain[i]);
  const double cross_x0 = sc_.along_distance(
      equal_loss_distance(sc_.path_loss, s, r));
  const double exponent = sc_.noise_over_tx * t +
                          laplace_exponent(s, t, x) +
                          laplace_exponent(other_state(s), t, cross_x0);
  return dens * std::exp(-exponent);
}

double AnalyticModel::coverage_probability(double threshold) const {
  if (threshold < 0)
    throw DomainError("coverage_probability: threshold must be nonnegative");
  double total = 0;
  for (LinkState s : kLinkStates) {
    auto f = [&](double x) { return coverage_integrand(s, threshold, x); };
    total += integrate_to_infinity(f, 0.0, opt_.quad).value;
  }
  return total;
}

double AnalyticModel::coverage_probability() const {
  return coverage_probability(sc_.sinr_threshold);
}

double AnalyticModel::footprint(double r) const {
  return beam_footprint(r, sc_.antenna.beamwidth_rad, sc_.road_half_width_m);
}

double AnalyticModel::max_footprint_radius() const {
  if (!r_star_)
    r_star_ = mmv2i::max_footprint_radius(sc_.antenna.beamwidth_rad,
                                          sc_.road_half_width_m,
                                          sc_.speed_mps * sc_.slot_s);
  return *r_star_;
}

double AnalyticModel::footprint_cdf(double length_m) const {
  const double r = mmv2i::max_footprint_radius(
      sc_.antenna.beamwidth_rad, sc_.road_half_width_m, length_m);
  return serving_cdf(r);
}

double AnalyticModel::no_leave_probability() const {
  return 1.0 - serving_cdf(max_footprint_radius());
}

double AnalyticModel::connectivity_probability() const {
  return coverage_probability() * no_leave_probability();
}

double AnalyticModel::mean_rate() const {
  // E[log2(1 + SINR)] = integral over u of P[log(1 + SINR) > u]
  double u_max = 1.0;
  while (coverage_probability(std::expm1(u_max)) > opt_.rate_tail_cutoff) {
    u_max *= 2.0;
    if (u_max > 128.0)
      throw ConvergenceError("mean_rate: coverage did not decay");
  }
  auto f = [&](double u) { return coverage_probability(std::expm1(u)); };
  const double nats = integrate(f, 0.0, u_max, opt_.rate_quad).value;
  return sc_.bandwidth_hz * nats / std::numbers::ln2;
}

double AnalyticModel::mean_comm_time() const {
  const double r_star = max_footprint_radius();
  const double x_star = sc_.along_distance(r_star);
  if (x_star <= 0) return sc_.slot_s;  // every footprint outlasts the slot
  auto f = [&](double x) {
    const double d = footprint(sc_.radial_distance(x));
    return (d / sc_.speed_mps) *
           (serving_density_along(LinkState::los, x) +
            serving_density_along(LinkState::nlos, x));
  };
  const double inside = integrate(f, 0.0, x_star, opt_.quad).value;
  return inside + sc_.slot_s * no_leave_probability();
}

double AnalyticModel::throughput() const {
  return mean_rate() * mean_comm_time() / sc_.slot_s;
}

}  // namespace mmv2i
