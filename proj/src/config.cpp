#include "mmv2i/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

namespace mmv2i {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace((unsigned char)s.front()))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace((unsigned char)s.back()))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& msg) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& name, int line, std::string_view v) {
  std::string buf(v);
  char* end = nullptr;
  const double d = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str() || *end != '\0' || !std::isfinite(d))
    fail(name, line, "expected a number, got '" + buf + "'");
  return d;
}

std::int64_t parse_int(const std::string& name, int line,
                       std::string_view v) {
  std::string buf(v);
  char* end = nullptr;
  const long long i = std::strtoll(buf.c_str(), &end, 10);
  if (end == buf.c_str() || *end != '\0')
    fail(name, line, "expected an integer, got '" + buf + "'");
  return i;
}

std::uint64_t parse_uint(const std::string& name, int line,
                         std::string_view v) {
  std::string buf(v);
  char* end = nullptr;
  const unsigned long long i = std::strtoull(buf.c_str(), &end, 10);
  if (end == buf.c_str() || *end != '\0')
    fail(name, line, "expected an unsigned integer, got '" + buf + "'");
  return i;
}

struct Entry {
  std::string section, key, value;
  int line;
};

std::vector<Entry> tokenize(std::string_view text, const std::string& name) {
  std::vector<Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail(name, line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(name, line_no, "empty section name");
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(name, line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail(name, line_no, "empty key");
    if (value.empty()) fail(name, line_no, "empty value for '" + key + "'");
    if (section.empty())
      fail(name, line_no, "key '" + key + "' appears before any [section]");
    entries.push_back({section, key, value, line_no});
  }
  return entries;
}

void apply(RunConfig& cfg, const Entry& e, const std::string& name) {
  Scenario& sc = cfg.scenario;
  const auto num = [&] { return parse_double(name, e.line, e.value); };
  const auto require_positive = [&](double v) {
    if (v <= 0) fail(name, e.line, "'" + e.key + "' must be positive");
    return v;
  };

  if (e.section == "scenario") {
    if (e.key == "preset") return;  // consumed before overrides
    if (e.key == "density_per_km")
      sc.bs_density_per_m = require_positive(num()) / 1000.0;
    else if (e.key == "road_half_width_m")
      sc.road_half_width_m = require_positive(num());
    else if (e.key == "tx_power_dbm")
      sc.tx_power_w = dbm_to_watts(num());
    else if (e.key == "bandwidth_mhz")
      sc.bandwidth_hz = require_positive(num()) * 1e6;
    else if (e.key == "sinr_threshold_db")
      sc.sinr_threshold = db_to_linear(num());
    else if (e.key == "speed_kmh")
      sc.speed_mps = kmh_to_mps(require_positive(num()));
    else if (e.key == "slot_ms")
      sc.slot_s = require_positive(num()) / 1000.0;
    else if (e.key == "fading_mean")
      sc.fading_mean = require_positive(num());
    else
      fail(name, e.line, "unknown key '" + e.key + "' in [scenario]");
  } else if (e.section == "path_loss") {
    if (e.key == "exponent_los")
      sc.path_loss.exponent[index_of(LinkState::los)] = require_positive(num());
    else if (e.key == "exponent_nlos")
      sc.path_loss.exponent[index_of(LinkState::nlos)] =
          require_positive(num());
    else if (e.key == "ref_gain_db_los")
      sc.path_loss.ref_gain[index_of(LinkState::los)] = db_to_linear(num());
    else if (e.key == "ref_gain_db_nlos")
      sc.path_loss.ref_gain[index_of(LinkState::nlos)] = db_to_linear(num());
    else
      fail(name, e.line, "unknown key '" + e.key + "' in [path_loss]");
  } else if (e.section == "blockage") {
    if (e.key == "decay_per_km")
      sc.blockage.decay_rate = num() / 1000.0;
    else if (e.key == "offset")
      sc.blockage.offset = num();
    else
      fail(name, e.line, "unknown key '" + e.key + "' in [blockage]");
  } else if (e.section == "antenna") {
    if (e.key == "beamwidth_deg")
      sc.antenna.beamwidth_rad = deg_to_rad(require_positive(num()));
    else if (e.key == "bs_main_gain_db")
      sc.antenna.bs_main_gain = db_to_linear(num());
    else if (e.key == "bs_side_gain_db")
      sc.antenna.bs_side_gain = db_to_linear(num());
    else if (e.key == "vn_main_gain_db")
      sc.antenna.vn_main_gain = db_to_linear(num());
    else if (e.key == "vn_side_gain_db")
      sc.antenna.vn_side_gain = db_to_linear(num());
    else if (e.key == "alignment_angle_deg")
      sc.antenna.alignment_angle_rad = deg_to_rad(num());
    else
      fail(name, e.line, "unknown key '" + e.key + "' in [antenna]");
  } else if (e.section == "simulation") {
    if (e.key == "seed")
      cfg.sim.seed = parse_uint(name, e.line, e.value);
    else if (e.key == "trials") {
      cfg.sim.trials = parse_int(name, e.line, e.value);
      if (cfg.sim.trials < 1) fail(name, e.line, "'trials' must be >= 1");
    } else if (e.key == "block_size") {
      cfg.sim.block_size = parse_int(name, e.line, e.value);
      if (cfg.sim.block_size < 1)
        fail(name, e.line, "'block_size' must be >= 1");
    } else if (e.key == "threads") {
      const auto t = parse_int(name, e.line, e.value);
      if (t < 0) fail(name, e.line, "'threads' must be >= 0");
      cfg.sim.threads = (int)t;
    } else {
      fail(name, e.line, "unknown key '" + e.key + "' in [simulation]");
    }
  } else {
    fail(name, e.line, "unknown section [" + e.section + "]");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

RunConfig preset_config(const std::string& preset) {
  RunConfig cfg;
  if (preset == "urban")
    cfg.scenario = urban_scenario();
  else if (preset == "rural")
    cfg.scenario = rural_scenario();
  else
    throw ConfigError("unknown preset '" + preset +
                      "' (expected urban or rural)");
  return cfg;
}

RunConfig parse_config(std::string_view text, const std::string& name) {
  const auto entries = tokenize(text, name);

  std::string preset = "urban";
  for (const auto& e : entries)
    if (e.section == "scenario" && e.key == "preset") preset = e.value;

  RunConfig cfg;
  try {
    cfg = preset_config(preset);
  } catch (const ConfigError&) {
    for (const auto& e : entries)
      if (e.section == "scenario" && e.key == "preset")
        fail(name, e.line, "unknown preset '" + e.value + "'");
    throw;
  }

  bool alignment_set = false;
  for (const auto& e : entries) {
    if (e.section == "antenna" && e.key == "alignment_angle_deg")
      alignment_set = true;
    apply(cfg, e, name);
  }

  // the interferer alignment angle follows the beamwidth unless pinned
  if (!alignment_set)
    cfg.scenario.antenna.alignment_angle_rad =
        0.5 * cfg.scenario.antenna.beamwidth_rad;

  // noise is always derived from the final bandwidth and transmit power
  cfg.scenario.noise_over_tx =
      normalized_noise(cfg.scenario.bandwidth_hz, cfg.scenario.tx_power_w);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string render_config(const RunConfig& cfg, const std::string& preset) {
  const Scenario& sc = cfg.scenario;
  std::ostringstream out;
  out << "[scenario]\n";
  if (!preset.empty()) out << "preset = " << preset << "\n";
  out << "density_per_km = " << fmt(sc.bs_density_per_m * 1000.0) << "\n"
      << "road_half_width_m = " << fmt(sc.road_half_width_m) << "\n"
      << "tx_power_dbm = " << fmt(linear_to_db(sc.tx_power_w) + 30.0) << "\n"
      << "bandwidth_mhz = " << fmt(sc.bandwidth_hz / 1e6) << "\n"
      << "sinr_threshold_db = " << fmt(linear_to_db(sc.sinr_threshold))
      << "\n"
      << "speed_kmh = " << fmt(sc.speed_mps * 3.6) << "\n"
      << "slot_ms = " << fmt(sc.slot_s * 1000.0) << "\n"
      << "fading_mean = " << fmt(sc.fading_mean) << "\n"
      << "# derived: noise_over_tx = " << fmt(sc.noise_over_tx) << "\n\n";

  out << "[path_loss]\n"
      << "exponent_los = " << fmt(sc.path_loss.exponent[0]) << "\n"
      << "exponent_nlos = " << fmt(sc.path_loss.exponent[1]) << "\n"
      << "ref_gain_db_los = " << fmt(linear_to_db(sc.path_loss.ref_gain[0]))
      << "\n"
      << "ref_gain_db_nlos = " << fmt(linear_to_db(sc.path_loss.ref_gain[1]))
      << "\n\n";

  out << "[blockage]\n"
      << "decay_per_km = " << fmt(sc.blockage.decay_rate * 1000.0) << "\n"
      << "offset = " << fmt(sc.blockage.offset) << "\n\n";

  const AntennaModel& a = sc.antenna;
  const double rad_to_deg = 180.0 / std::numbers::pi;
  out << "[antenna]\n"
      << "beamwidth_deg = " << fmt(a.beamwidth_rad * rad_to_deg) << "\n"
      << "bs_main_gain_db = " << fmt(linear_to_db(a.bs_main_gain)) << "\n"
      << "bs_side_gain_db = " << fmt(linear_to_db(a.bs_side_gain)) << "\n"
      << "vn_main_gain_db = " << fmt(linear_to_db(a.vn_main_gain)) << "\n"
      << "vn_side_gain_db = " << fmt(linear_to_db(a.vn_side_gain)) << "\n"
      << "alignment_angle_deg = " << fmt(a.alignment_angle_rad * rad_to_deg)
      << "\n\n";

  out << "[simulation]\n"
      << "seed = " << cfg.sim.seed << "\n"
      << "trials = " << cfg.sim.trials << "\n"
      << "block_size = " << cfg.sim.block_size << "\n"
      << "threads = " << cfg.sim.threads << "\n";
  return out.str();
}

}  // namespace mmv2i
