#include <doctest.h>

#include <string>

#include "mmv2i/config.hpp"
#include "oracles.hpp"

using namespace mmv2i;

TEST_SUITE("config") {

TEST_CASE("presets parse and derive the normalized noise") {
  const RunConfig cfg = parse_config("[scenario]\npreset = urban\n");
  CHECK(cfg.scenario.noise_over_tx ==
        doctest::Approx(oracles::kNoiseOverTx).epsilon(1e-9));
  CHECK(cfg.scenario.bs_density_per_m ==
        doctest::Approx(10.6842105263158e-3));
  CHECK_THROWS_AS(preset_config("suburban"), ConfigError);
}

TEST_CASE("overrides apply on top of the preset") {
  const std::string text = R"(
# sparse deployment, fast receiver
[scenario]
preset = rural
density_per_km = 3.5
speed_kmh = 130     ; inline comment
slot_ms = 500

[antenna]
beamwidth_deg = 60
bs_main_gain_db = 12

[simulation]
seed = 42
trials = 5000
)";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.scenario.bs_density_per_m == doctest::Approx(0.0035));
  CHECK(cfg.scenario.speed_mps == doctest::Approx(kmh_to_mps(130.0)));
  CHECK(cfg.scenario.slot_s == doctest::Approx(0.5));
  CHECK(cfg.scenario.path_loss.exponent[1] == 4.0);  // rural base kept
  CHECK(cfg.scenario.antenna.beamwidth_rad ==
        doctest::Approx(deg_to_rad(60.0)));
  // alignment follows the beamwidth when not pinned
  CHECK(cfg.scenario.antenna.alignment_angle_rad ==
        doctest::Approx(deg_to_rad(30.0)));
  CHECK(cfg.sim.seed == 42);
  CHECK(cfg.sim.trials == 5000);
}

TEST_CASE("explicit alignment angle is preserved") {
  const std::string text =
      "[antenna]\nbeamwidth_deg = 60\nalignment_angle_deg = 45\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.scenario.antenna.alignment_angle_rad ==
        doctest::Approx(deg_to_rad(45.0)));
}

TEST_CASE("noise follows overridden power and bandwidth") {
  const RunConfig cfg = parse_config(
      "[scenario]\ntx_power_dbm = 30\nbandwidth_mhz = 500\n");
  CHECK(cfg.scenario.noise_over_tx ==
        doctest::Approx(normalized_noise(0.5e9, 1.0)).epsilon(1e-12));
}

TEST_CASE("errors carry the line number") {
  const auto check_message = [](const std::string& text,
                                const std::string& needle) {
    try {
      parse_config(text, "test.ini");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  check_message("[scenario]\nunknown_key = 1\n", "test.ini:2");
  check_message("[scenario]\nunknown_key = 1\n", "unknown_key");
  check_message("[mystery]\nx = 1\n", "mystery");
  check_message("density_per_km = 5\n", "before any [section]");
  check_message("[scenario]\ndensity_per_km = oops\n", "expected a number");
  check_message("[scenario]\ndensity_per_km = -4\n", "must be positive");
  check_message("[scenario]\ndensity_per_km\n", "key = value");
  check_message("[scenario\nx = 1\n", "unterminated");
  check_message("[scenario]\npreset = suburban\n", "test.ini:2");
  check_message("[simulation]\ntrials = 0\n", "must be >= 1");
}

TEST_CASE("render and reparse round-trips") {
  RunConfig cfg = preset_config("rural");
  cfg.scenario.bs_density_per_m = 0.0077;
  cfg.scenario.slot_s = 0.1;
  cfg.sim.seed = 1234;
  const std::string text = render_config(cfg, "rural");
  const RunConfig back = parse_config(text);
  CHECK(back.scenario.bs_density_per_m ==
        doctest::Approx(cfg.scenario.bs_density_per_m).epsilon(1e-12));
  CHECK(back.scenario.slot_s == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(back.scenario.path_loss.ref_gain[0] ==
        doctest::Approx(cfg.scenario.path_loss.ref_gain[0]).epsilon(1e-10));
  CHECK(back.scenario.antenna.alignment_angle_rad ==
        doctest::Approx(cfg.scenario.antenna.alignment_angle_rad)
            .epsilon(1e-10));
  CHECK(back.sim.seed == 1234);
}

TEST_CASE("missing file is reported") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
}

}  // TEST_SUITE
