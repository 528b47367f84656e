#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmv2i/config.hpp"

namespace mmv2i {

// metric identifiers used in CSV output and CLI selection
inline constexpr const char* kMetricNames[] = {
    "p_los",     "coverage",       "no_leave",      "connectivity",
    "mean_rate", "mean_comm_time", "throughput"};

struct SweepRow {
  std::string axis_name;
  double axis_value = 0;
  std::string metric;
  std::string method;  // analytic | simulate | reference
  double value = 0;
  double std_error = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0;
};

struct SweepRequest {
  // density_per_km | speed_kmh | slot_ms | beamwidth_deg | threshold_db
  std::string axis = "density_per_km";
  std::vector<double> values;
  bool run_analytic = true;
  bool run_simulation = false;
  std::vector<std::string> metrics;  // empty = all
};

// applies one axis value to a copy of the base configuration; beamwidth_deg
// swaps in the paired antenna preset for that aperture
RunConfig apply_axis(const RunConfig& base, const std::string& axis,
                     double value);

std::vector<SweepRow> run_sweep(const RunConfig& base,
                                const SweepRequest& req);

// compute every (or the selected) metric at a single operating point
std::vector<SweepRow> analytic_rows(const RunConfig& cfg,
                                    const std::string& axis, double axis_value,
                                    const std::vector<std::string>& metrics);
std::vector<SweepRow> simulation_rows(const RunConfig& cfg,
                                      const std::string& axis,
                                      double axis_value,
                                      const std::vector<std::string>& metrics);
std::vector<SweepRow> simulation_rows_from(
    const SimResult& result, const std::string& axis, double axis_value,
    const std::vector<std::string>& metrics);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in, const std::string& name);
std::vector<SweepRow> load_csv(const std::string& path);

struct CompareOptions {
  double abs_tol = 0;
  double rel_tol = 0;
  double sigma = 0;  // when > 0, |diff| <= sigma * combined std error passes
};

struct CompareMismatch {
  SweepRow left, right;
  double abs_diff = 0, rel_diff = 0;
};

struct CompareReport {
  int matched = 0;
  int failed = 0;
  int left_only = 0;
  int right_only = 0;
  double max_abs_diff = 0, max_rel_diff = 0;
  std::vector<CompareMismatch> mismatches;
  bool ok() const { return failed == 0 && matched > 0; }
};

// joins on (axis_name, axis_value, metric, method); with ignore_method the
// join drops the method column (for analytic-vs-simulation comparisons)
CompareReport compare_rows(const std::vector<SweepRow>& left,
                           const std::vector<SweepRow>& right,
                           const CompareOptions& opt,
                           bool ignore_method = false);

}  // namespace mmv2i
