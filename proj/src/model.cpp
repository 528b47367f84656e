#include "mmv2i/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mmv2i/numerics.hpp"

namespace mmv2i {

namespace {
constexpr double kBoltzmann = 1.381e-23;  // J/K
constexpr double kAmbientK = 290.0;
}  // namespace

const char* to_string(LinkState s) {
  return s == LinkState::los ? "los" : "nlos";
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double kmh_to_mps(double kmh) { return kmh / 3.6; }
double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double normalized_noise(double bandwidth_hz, double tx_power_w) {
  return kBoltzmann * kAmbientK * bandwidth_hz / tx_power_w;
}

double PathLossLaw::loss(LinkState s, double r) const {
  const auto i = index_of(s);
  return ref_gain[i] * std::pow(r, -exponent[i]);
}

double BlockageLaw::p_los(double x) const {
  return std::exp(-offset - decay_rate * x);
}

double BlockageLaw::p_state(LinkState s, double x) const {
  const double p = p_los(x);
  return s == LinkState::los ? p : 1.0 - p;
}

double BlockageLaw::p_los_limit() const {
  return decay_rate > 0 ? 0.0 : std::exp(-offset);
}

double BlockageLaw::integrated(LinkState s, double x) const {
  double q_los;
  if (decay_rate > 0)
    q_los = std::exp(-offset) * (-std::expm1(-decay_rate * x)) / decay_rate;
  else
    q_los = std::exp(-offset) * x;
  return s == LinkState::los ? q_los : x - q_los;
}

double BlockageLaw::integrated_p_los_limit() const {
  if (decay_rate > 0) return std::exp(-offset) / decay_rate;
  return std::numeric_limits<double>::infinity();
}

std::array<AntennaModel::GainAtom, 2> AntennaModel::interferer_gains() const {
  const double p_aligned = alignment_angle_rad / std::numbers::pi;
  return {{{bs_main_gain * vn_main_gain, p_aligned},
           {bs_side_gain * vn_side_gain, 1.0 - p_aligned}}};
}

AntennaModel antenna_preset(double beamwidth_deg) {
  double bs_gain_db;
  if (beamwidth_deg == 30.0)
    bs_gain_db = 20.0;
  else if (beamwidth_deg == 60.0)
    bs_gain_db = 12.0;
  else if (beamwidth_deg == 90.0)
    bs_gain_db = 6.0;
  else
    throw std::invalid_argument(
        "antenna_preset: no gain pairing for this beamwidth (use 30, 60 or "
        "90 deg)");
  AntennaModel a;
  a.beamwidth_rad = deg_to_rad(beamwidth_deg);
  a.bs_main_gain = db_to_linear(bs_gain_db);
  a.bs_side_gain = db_to_linear(-10.0);
  a.vn_main_gain = db_to_linear(12.0);
  a.vn_side_gain = db_to_linear(-10.0);
  a.alignment_angle_rad = 0.5 * a.beamwidth_rad;
  return a;
}

double Scenario::radial_distance(double x) const {
  return std::hypot(x, road_half_width_m);
}

double Scenario::along_distance(double r) const {
  if (r <= road_half_width_m) return 0.0;
  return std::sqrt(r * r - road_half_width_m * road_half_width_m);
}

namespace {
Scenario shared_scenario() {
  Scenario sc;
  sc.bs_density_per_m = 10.6842105263158e-3;
  sc.road_half_width_m = 7.4;
  sc.antenna = antenna_preset(30.0);
  sc.tx_power_w = dbm_to_watts(27.0);
  sc.bandwidth_hz = 1e9;
  sc.noise_over_tx = normalized_noise(sc.bandwidth_hz, sc.tx_power_w);
  sc.fading_mean = 1.0;
  sc.sinr_threshold = db_to_linear(-5.0);
  sc.speed_mps = kmh_to_mps(100.0);
  sc.slot_s = 0.3;
  return sc;
}
}  // namespace

Scenario urban_scenario() {
  Scenario sc = shared_scenario();
  sc.path_loss.exponent = {2.0, 2.92};
  sc.path_loss.ref_gain = {db_to_linear(-72.0), db_to_linear(-61.4)};
  sc.blockage = {0.0149, 0.0};
  return sc;
}

Scenario rural_scenario() {
  Scenario sc = shared_scenario();
  sc.path_loss.exponent = {2.8, 4.0};
  sc.path_loss.ref_gain = {db_to_linear(-61.0), db_to_linear(-61.0)};
  sc.blockage = {0.0, 0.222};
  return sc;
}

double beam_footprint(double r, double beamwidth_rad, double half_width_m) {
  const double w = half_width_m;
  if (r < w) r = w;
  const double half = 0.5 * beamwidth_rad;
  const double tilt = std::numbers::pi / 2.0 - half + std::acos(w / r);
  return r * std::sin(half) / std::sin(tilt);
}

double max_footprint_radius(double beamwidth_rad, double half_width_m,
                            double reach_m) {
  if (beam_footprint(half_width_m, beamwidth_rad, half_width_m) >= reach_m)
    return half_width_m;
  auto gap = [&](double r) {
    return beam_footprint(r, beamwidth_rad, half_width_m) - reach_m;
  };
  return find_root_increasing(gap, half_width_m, half_width_m, 1e-13);
}

double equal_loss_distance(const PathLossLaw& pl, LinkState s, double r) {
  const auto i = index_of(s);
  const auto o = index_of(other_state(s));
  const double ratio = pl.ref_gain[o] / pl.ref_gain[i];
  return std::pow(ratio * std::pow(r, pl.exponent[i]), 1.0 / pl.exponent[o]);
}

}  // namespace mmv2i
