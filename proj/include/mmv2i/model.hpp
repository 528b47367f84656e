#pragma once

#include <array>
#include <cstddef>

namespace mmv2i {

enum class LinkState { los = 0, nlos = 1 };
constexpr std::array<LinkState, 2> kLinkStates{LinkState::los,
                                               LinkState::nlos};
constexpr std::size_t index_of(LinkState s) {
  return static_cast<std::size_t>(s);
}
constexpr LinkState other_state(LinkState s) {
  return s == LinkState::los ? LinkState::nlos : LinkState::los;
}
const char* to_string(LinkState s);

double db_to_linear(double db);
double linear_to_db(double v);
double dbm_to_watts(double dbm);
double kmh_to_mps(double kmh);
double deg_to_rad(double deg);

// thermal noise power at 290 K over the given bandwidth, normalized by the
// transmit power so it lives on the same scale as the unit-power path gains
double normalized_noise(double bandwidth_hz, double tx_power_w);

// distance-power law per link state: loss(s, r) = ref_gain[s] * r^-exponent[s]
struct PathLossLaw {
  std::array<double, 2> exponent{};  // indexed by LinkState
  std::array<double, 2> ref_gain{};  // linear gain at 1 m
  double loss(LinkState s, double r) const;
};

// probability that a link whose transmitter sits at along-road distance x is
// unobstructed: p_los(x) = exp(-offset - decay_rate * x)
struct BlockageLaw {
  double decay_rate = 0.0;  // 1/m
  double offset = 0.0;

  double p_los(double x) const;
  double p_state(LinkState s, double x) const;
  double p_los_limit() const;  // limit for x -> inf
  // integral of p_state over [0, x] (closed form)
  double integrated(LinkState s, double x) const;
  double integrated_p_los_limit() const;  // may be +inf when decay_rate == 0
};

struct AntennaModel {
  double beamwidth_rad = 0;  // aperture of the roadside unit's serving beam
  double bs_main_gain = 1, bs_side_gain = 1;  // linear
  double vn_main_gain = 1, vn_side_gain = 1;
  // an interfering beam points at the receiver with probability
  // alignment_angle_rad / pi
  double alignment_angle_rad = 0;

  double peak_gain() const { return bs_main_gain * vn_main_gain; }

  struct GainAtom {
    double gain, prob;
  };
  // two-point gain distribution seen from an interfering transmitter
  std::array<GainAtom, 2> interferer_gains() const;
};

// paired beamwidth/gain presets for the supported apertures (30, 60, 90 deg)
AntennaModel antenna_preset(double beamwidth_deg);

struct Scenario {
  // total line intensity of roadside units in 1/m, both road sides combined;
  // the folded distance process on [0, inf) has intensity 2x this value
  double bs_density_per_m = 0;
  // receiver's lateral offset from the roadside deployment line
  double road_half_width_m = 7.4;
  PathLossLaw path_loss;
  BlockageLaw blockage;
  AntennaModel antenna;
  double tx_power_w = 0;
  double bandwidth_hz = 0;
  double noise_over_tx = 0;  // noise power / tx power
  double fading_mean = 1;    // mean of the exponential power fade
  double sinr_threshold = 1;  // linear
  double speed_mps = 0;
  double slot_s = 0;

  double radial_distance(double x) const;  // sqrt(x^2 + W^2)
  double along_distance(double r) const;   // inverse, 0 when r <= W
};

// dense-obstruction and sparse-obstruction highway presets
Scenario urban_scenario();
Scenario rural_scenario();

// road length covered by a cone of the given aperture aimed at a receiver at
// radial distance r (clamped to the minimum feasible distance)
double beam_footprint(double r, double beamwidth_rad, double half_width_m);

// smallest radial distance whose footprint reaches the given length
double max_footprint_radius(double beamwidth_rad, double half_width_m,
                            double reach_m);

// distance at which the other state's loss equals loss(s, r)
double equal_loss_distance(const PathLossLaw& pl, LinkState s, double r);

}  // namespace mmv2i
