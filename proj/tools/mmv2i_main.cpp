#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmv2i/analytic.hpp"
#include "mmv2i/config.hpp"
#include "mmv2i/simulator.hpp"
#include "mmv2i/sweep.hpp"

namespace {

using namespace mmv2i;

struct CommonOpts {
  std::string config_path;
  std::string preset = "urban";
  std::optional<double> density_per_km;
  std::optional<double> speed_kmh;
  std::optional<double> slot_ms;
  std::optional<double> beamwidth_deg;
  std::optional<double> threshold_db;
  std::optional<double> alignment_angle_deg;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::int64_t> block_size;
  std::vector<std::string> metrics;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_metrics) {
  cmd->add_option("--config", o.config_path,
                  "configuration file (overrides are applied on top)");
  cmd->add_option("--preset", o.preset, "scenario preset: urban | rural")
      ->check(CLI::IsMember({"urban", "rural"}));
  cmd->add_option("--density-per-km", o.density_per_km,
                  "deployment density, units per km (both road sides)");
  cmd->add_option("--speed-kmh", o.speed_kmh, "receiver speed, km/h");
  cmd->add_option("--slot-ms", o.slot_ms, "scheduling slot, ms");
  cmd->add_option("--beamwidth-deg", o.beamwidth_deg,
                  "serving-beam aperture; applies the paired antenna preset "
                  "(30, 60 or 90)");
  cmd->add_option("--threshold-db", o.threshold_db, "SINR threshold, dB");
  cmd->add_option("--alignment-angle-deg", o.alignment_angle_deg,
                  "interferer alignment angle (default: half the beamwidth)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--threads", o.threads, "worker threads (0 = default)");
  cmd->add_option("--block-size", o.block_size,
                  "trials per deterministic accumulation block");
  if (with_metrics)
    cmd->add_option("--metric", o.metrics,
                    "metric selection (repeatable; default: all)");
}

RunConfig build_config(const CommonOpts& o) {
  RunConfig cfg = o.config_path.empty() ? preset_config(o.preset)
                                        : load_config(o.config_path);
  Scenario& sc = cfg.scenario;
  if (o.density_per_km) sc.bs_density_per_m = *o.density_per_km / 1000.0;
  if (o.speed_kmh) sc.speed_mps = kmh_to_mps(*o.speed_kmh);
  if (o.slot_ms) sc.slot_s = *o.slot_ms / 1000.0;
  if (o.beamwidth_deg) sc.antenna = antenna_preset(*o.beamwidth_deg);
  if (o.threshold_db) sc.sinr_threshold = db_to_linear(*o.threshold_db);
  if (o.alignment_angle_deg)
    sc.antenna.alignment_angle_rad = deg_to_rad(*o.alignment_angle_deg);
  if (o.trials) cfg.sim.trials = *o.trials;
  if (o.seed) cfg.sim.seed = *o.seed;
  if (o.threads) cfg.sim.threads = *o.threads;
  if (o.block_size) cfg.sim.block_size = *o.block_size;
  return cfg;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_rows(const std::vector<SweepRow>& rows, bool csv) {
  if (csv) {
    write_csv(std::cout, rows);
    return;
  }
  for (const auto& r : rows) {
    std::cout << r.metric << " = " << fmt(r.value);
    if (r.method == "simulate")
      std::cout << " +- " << fmt(r.std_error) << "  (trials " << r.trials
                << ", seed " << r.seed << ", " << fmt(r.wall_ms) << " ms)";
    std::cout << '\n';
  }
}

int run_analytic(const CommonOpts& o, bool csv) {
  const RunConfig cfg = build_config(o);
  print_rows(analytic_rows(cfg, "point", 0.0, o.metrics), csv);
  return 0;
}

int run_simulate(const CommonOpts& o, bool csv, bool serial) {
  const RunConfig cfg = build_config(o);
  const SimResult r = serial ? simulate_serial(cfg.scenario, cfg.sim)
                             : simulate(cfg.scenario, cfg.sim);
  print_rows(simulation_rows_from(r, "point", 0.0, o.metrics), csv);
  return 0;
}

int run_sweep_cmd(const CommonOpts& o, const std::string& axis,
                  const std::string& values_csv, double from, double to,
                  int points, bool log_spacing,
                  const std::vector<std::string>& methods,
                  const std::string& out_path) {
  SweepRequest req;
  req.axis = axis;
  req.metrics = o.metrics;
  req.run_analytic = false;
  req.run_simulation = false;
  for (const auto& m : methods) {
    if (m == "analytic")
      req.run_analytic = true;
    else if (m == "simulate")
      req.run_simulation = true;
    else
      throw CLI::ValidationError("--method",
                                 "expected analytic and/or simulate");
  }
  if (!req.run_analytic && !req.run_simulation) req.run_analytic = true;

  if (!values_csv.empty()) {
    std::stringstream ss(values_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) req.values.push_back(std::stod(tok));
  } else {
    if (points < 2 || !(to > from))
      throw CLI::ValidationError(
          "--from/--to/--points",
          "need --values or an increasing range with --points >= 2");
    for (int i = 0; i < points; ++i) {
      const double f = (double)i / (points - 1);
      req.values.push_back(log_spacing
                               ? from * std::pow(to / from, f)
                               : from + (to - from) * f);
    }
  }

  const RunConfig cfg = build_config(o);
  const auto rows = run_sweep(cfg, req);
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    write_csv(out, rows);
    std::cerr << rows.size() << " rows -> " << out_path << '\n';
  }
  return 0;
}

int run_compare(const std::string& left_path, const std::string& right_path,
                const CompareOptions& copt, bool ignore_method) {
  const auto left = load_csv(left_path);
  const auto right = load_csv(right_path);
  const CompareReport rep = compare_rows(left, right, copt, ignore_method);

  std::cout << "matched " << rep.matched << ", failed " << rep.failed
            << ", left-only " << rep.left_only << ", right-only "
            << rep.right_only << '\n'
            << "max abs diff " << fmt(rep.max_abs_diff) << ", max rel diff "
            << fmt(rep.max_rel_diff) << '\n';
  for (const auto& m : rep.mismatches)
    std::cout << "  MISMATCH " << m.left.metric << " @ " << m.left.axis_name
              << " = " << fmt(m.left.axis_value) << ": " << fmt(m.left.value)
              << " vs " << fmt(m.right.value) << " (abs "
              << fmt(m.abs_diff) << ", rel " << fmt(m.rel_diff) << ")\n";
  if (rep.matched == 0) {
    std::cout << "no comparable rows\n";
    return 2;
  }
  return rep.ok() ? 0 : 2;
}

int run_presets(const std::string& which) {
  const auto dump = [](const std::string& name) {
    std::cout << render_config(preset_config(name), name) << '\n';
  };
  if (which.empty() || which == "urban") dump("urban");
  if (which.empty() || which == "rural") dump("rural");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "closed-form and Monte Carlo link metrics for highway receivers "
      "served by roadside millimeter-wave units"};
  app.require_subcommand(1);

  CommonOpts aopt, sopt, wopt;
  bool a_csv = false, s_csv = false, s_serial = false;

  CLI::App* analytic =
      app.add_subcommand("analytic", "evaluate the closed-form metrics");
  add_common(analytic, aopt, true);
  analytic->add_flag("--csv", a_csv, "emit CSV rows instead of key = value");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run the Monte Carlo twin");
  add_common(simulate, sopt, true);
  simulate->add_flag("--csv", s_csv, "emit CSV rows instead of key = value");
  simulate->add_flag("--serial", s_serial,
                     "use the single-threaded reference path");

  CLI::App* sweep =
      app.add_subcommand("sweep", "evaluate metrics along one axis");
  add_common(sweep, wopt, true);
  std::string axis = "density_per_km", values_csv, out_path;
  double from = 0, to = 0;
  int points = 0;
  bool log_spacing = false;
  std::vector<std::string> methods{"analytic"};
  sweep->add_option("--axis", axis,
                    "density_per_km | speed_kmh | slot_ms | beamwidth_deg | "
                    "threshold_db");
  sweep->add_option("--values", values_csv, "comma-separated axis values");
  sweep->add_option("--from", from, "range start");
  sweep->add_option("--to", to, "range end");
  sweep->add_option("--points", points, "number of range points");
  sweep->add_flag("--log", log_spacing, "logarithmic range spacing");
  sweep->add_option("--method", methods,
                    "analytic and/or simulate (repeatable)");
  sweep->add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI::App* compare =
      app.add_subcommand("compare", "diff two metric CSV files");
  std::string left_path, right_path;
  CompareOptions copt;
  bool ignore_method = false;
  compare->add_option("left", left_path, "first CSV")->required();
  compare->add_option("right", right_path, "second CSV")->required();
  compare->add_option("--abs-tol", copt.abs_tol, "absolute tolerance");
  compare->add_option("--rel-tol", copt.rel_tol, "relative tolerance");
  compare->add_option(
      "--sigma", copt.sigma,
      "pass when |diff| <= sigma * combined standard error");
  compare->add_flag("--ignore-method", ignore_method,
                    "join rows across methods (analytic vs simulate)");

  CLI::App* presets =
      app.add_subcommand("presets", "print the built-in configurations");
  std::string which;
  presets->add_option("name", which, "urban | rural (default: both)")
      ->check(CLI::IsMember({"urban", "rural"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic->parsed()) return run_analytic(aopt, a_csv);
    if (simulate->parsed()) return run_simulate(sopt, s_csv, s_serial);
    if (sweep->parsed())
      return run_sweep_cmd(wopt, axis, values_csv, from, to, points,
                           log_spacing, methods, out_path);
    if (compare->parsed())
      return run_compare(left_path, right_path, copt, ignore_method);
    if (presets->parsed()) return run_presets(which);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
