#pragma once

#include <cstdint>

#include "mmv2i/model.hpp"

namespace mmv2i {

struct SimOptions {
  std::uint64_t seed = 1;
  std::int64_t trials = 20000;
  // trials are accumulated in fixed blocks and the block partials are folded
  // in index order, so results are bit-identical for any thread count
  std::int64_t block_size = 4096;
  int threads = 0;  // 0 = runtime default
  // deployment window half-width: max(min_window_m, min_expected_bs/(2 rho))
  double min_window_m = 15e3;
  double min_expected_bs = 30.0;
};

struct Estimate {
  double value = 0;
  double std_error = 0;
};

struct SimResult {
  Estimate p_los;
  Estimate coverage;
  Estimate no_leave;
  Estimate connectivity;    // coverage * no-leave (delta-method error)
  Estimate mean_rate;       // bit/s
  Estimate mean_comm_time;  // s
  Estimate throughput;      // bit/s (delta-method error)
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int threads_used = 1;
  double wall_ms = 0;
};

// Monte Carlo twin of AnalyticModel over one-shot network snapshots
SimResult simulate(const Scenario& sc, const SimOptions& opt);
// single-threaded reference path sharing the same block partition; produces
// bit-identical results to simulate()
SimResult simulate_serial(const Scenario& sc, const SimOptions& opt);

// empirical E[exp(-t I_s)] for the interference from state-s transmitters
// beyond along-road distance x0, over the given finite window
Estimate sample_interference_laplace(const Scenario& sc, LinkState s,
                                     double t, double x0, std::int64_t draws,
                                     std::uint64_t seed,
                                     double window_m = 50e3);

}  // namespace mmv2i
