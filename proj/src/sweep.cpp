#include "mmv2i/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "mmv2i/analytic.hpp"
#include "mmv2i/simulator.hpp"

namespace mmv2i {
namespace {

bool known_metric(const std::string& m) {
  for (const char* k : kMetricNames)
    if (m == k) return true;
  return false;
}

std::vector<std::string> resolve_metrics(const std::vector<std::string>& m) {
  if (m.empty())
    return {std::begin(kMetricNames), std::end(kMetricNames)};
  for (const auto& name : m)
    if (!known_metric(name))
      throw std::invalid_argument("unknown metric '" + name + "'");
  return m;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double wall_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

RunConfig apply_axis(const RunConfig& base, const std::string& axis,
                     double value) {
  RunConfig cfg = base;
  Scenario& sc = cfg.scenario;
  if (axis == "density_per_km") {
    sc.bs_density_per_m = value / 1000.0;
  } else if (axis == "speed_kmh") {
    sc.speed_mps = kmh_to_mps(value);
  } else if (axis == "slot_ms") {
    sc.slot_s = value / 1000.0;
  } else if (axis == "beamwidth_deg") {
    sc.antenna = antenna_preset(value);
  } else if (axis == "threshold_db") {
    sc.sinr_threshold = db_to_linear(value);
  } else {
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");
  }
  return cfg;
}

std::vector<SweepRow> analytic_rows(const RunConfig& cfg,
                                    const std::string& axis, double axis_value,
                                    const std::vector<std::string>& metrics) {
  const auto wanted = resolve_metrics(metrics);
  AnalyticModel model(cfg.scenario);
  std::vector<SweepRow> rows;
  for (const auto& m : wanted) {
    const auto t0 = std::chrono::steady_clock::now();
    double v = 0;
    if (m == "p_los")
      v = model.p_los();
    else if (m == "coverage")
      v = model.coverage_probability();
    else if (m == "no_leave")
      v = model.no_leave_probability();
    else if (m == "connectivity")
      v = model.connectivity_probability();
    else if (m == "mean_rate")
      v = model.mean_rate();
    else if (m == "mean_comm_time")
      v = model.mean_comm_time();
    else if (m == "throughput")
      v = model.throughput();
    rows.push_back({axis, axis_value, m, "analytic", v, 0.0, 0, 0,
                    wall_since(t0)});
  }
  return rows;
}

std::vector<SweepRow> simulation_rows(const RunConfig& cfg,
                                      const std::string& axis,
                                      double axis_value,
                                      const std::vector<std::string>& metrics) {
  return simulation_rows_from(simulate(cfg.scenario, cfg.sim), axis,
                              axis_value, metrics);
}

std::vector<SweepRow> simulation_rows_from(
    const SimResult& r, const std::string& axis, double axis_value,
    const std::vector<std::string>& metrics) {
  const auto wanted = resolve_metrics(metrics);
  std::vector<SweepRow> rows;
  const auto emit = [&](const std::string& m, const Estimate& e) {
    rows.push_back({axis, axis_value, m, "simulate", e.value, e.std_error,
                    r.trials, r.seed, r.wall_ms});
  };
  for (const auto& m : wanted) {
    if (m == "p_los")
      emit(m, r.p_los);
    else if (m == "coverage")
      emit(m, r.coverage);
    else if (m == "no_leave")
      emit(m, r.no_leave);
    else if (m == "connectivity")
      emit(m, r.connectivity);
    else if (m == "mean_rate")
      emit(m, r.mean_rate);
    else if (m == "mean_comm_time")
      emit(m, r.mean_comm_time);
    else if (m == "throughput")
      emit(m, r.throughput);
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const RunConfig& base,
                                const SweepRequest& req) {
  if (req.values.empty())
    throw std::invalid_argument("sweep needs at least one axis value");
  std::vector<SweepRow> rows;
  std::size_t point = 0;
  for (double v : req.values) {
    RunConfig cfg = apply_axis(base, req.axis, v);
    // independent draws per sweep point
    cfg.sim.seed = base.sim.seed + point;
    if (req.run_analytic) {
      auto a = analytic_rows(cfg, req.axis, v, req.metrics);
      rows.insert(rows.end(), a.begin(), a.end());
    }
    if (req.run_simulation) {
      auto s = simulation_rows(cfg, req.axis, v, req.metrics);
      rows.insert(rows.end(), s.begin(), s.end());
    }
    ++point;
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis_name,axis_value,metric,method,value,std_error,trials,seed,"
         "wall_ms\n";
  for (const auto& r : rows) {
    out << r.axis_name << ',' << fmt(r.axis_value) << ',' << r.metric << ','
        << r.method << ',' << fmt(r.value) << ',' << fmt(r.std_error) << ','
        << r.trials << ',' << r.seed << ',' << fmt(r.wall_ms) << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in, const std::string& name) {
  const std::string header =
      "axis_name,axis_value,metric,method,value,std_error,trials,seed,"
      "wall_ms";
  std::string line;
  int line_no = 0;
  // leading # lines describe the run that produced the file; skip them
  for (;;) {
    if (!std::getline(in, line))
      throw std::runtime_error(name + ": no CSV header found");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    break;
  }
  if (line != header)
    throw std::runtime_error(name + ": unexpected CSV header '" + line + "'");

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9)
      throw std::runtime_error(name + ":" + std::to_string(line_no) +
                               ": expected 9 columns, got " +
                               std::to_string(cells.size()));
    SweepRow r;
    r.axis_name = cells[0];
    r.axis_value = std::stod(cells[1]);
    r.metric = cells[2];
    r.method = cells[3];
    r.value = std::stod(cells[4]);
    r.std_error = std::stod(cells[5]);
    r.trials = std::stoll(cells[6]);
    r.seed = std::stoull(cells[7]);
    r.wall_ms = std::stod(cells[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file '" + path + "'");
  return read_csv(in, path);
}

CompareReport compare_rows(const std::vector<SweepRow>& left,
                           const std::vector<SweepRow>& right,
                           const CompareOptions& opt, bool ignore_method) {
  using Key = std::tuple<std::string, long long, std::string, std::string>;
  const auto key_of = [&](const SweepRow& r) {
    // quantize the axis value so textual round-trips still join
    const long long q = llround(r.axis_value * 1e9);
    return Key{r.axis_name, q, r.metric,
               ignore_method ? std::string{} : r.method};
  };

  std::map<Key, const SweepRow*> right_index;
  for (const auto& r : right) right_index[key_of(r)] = &r;

  CompareReport rep;
  std::map<Key, bool> right_seen;
  for (const auto& l : left) {
    auto it = right_index.find(key_of(l));
    if (it == right_index.end()) {
      ++rep.left_only;
      continue;
    }
    right_seen[it->first] = true;
    const SweepRow& r = *it->second;
    ++rep.matched;
    const double diff = std::abs(l.value - r.value);
    const double scale = std::max(std::abs(l.value), std::abs(r.value));
    const double rel = scale > 0 ? diff / scale : 0.0;
    rep.max_abs_diff = std::max(rep.max_abs_diff, diff);
    rep.max_rel_diff = std::max(rep.max_rel_diff, rel);

    const double se =
        std::sqrt(l.std_error * l.std_error + r.std_error * r.std_error);
    const bool pass = diff <= opt.abs_tol || rel <= opt.rel_tol ||
                      (opt.sigma > 0 && diff <= opt.sigma * se);
    if (!pass) {
      ++rep.failed;
      rep.mismatches.push_back({l, r, diff, rel});
    }
  }
  for (const auto& r : right)
    if (!right_seen.count(key_of(r))) ++rep.right_only;
  return rep;
}

}  // namespace mmv2i
