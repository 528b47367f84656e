#pragma once

// Structural invariants of the analytic model and the simulator, shared by
// the unit test suite and the acceptance gate. Each check is self-contained
// and reports the numbers it compared so failures are diagnosable from logs.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mmv2i/analytic.hpp"
#include "mmv2i/model.hpp"
#include "mmv2i/numerics.hpp"
#include "mmv2i/simulator.hpp"

namespace mmv2i::checks {

struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

// association probabilities over both link states form a partition
inline PropertyCheck association_partition() {
  double worst = 0;
  for (const char* name : {"urban", "rural"}) {
    for (double dens_km : {0.5, 5.0, 10.6842105263158, 40.0}) {
      Scenario sc =
          std::string(name) == "urban" ? urban_scenario() : rural_scenario();
      sc.bs_density_per_m = dens_km / 1000.0;
      AnalyticModel m(sc);
      const double total = m.association_probability(LinkState::los) +
                           m.association_probability(LinkState::nlos);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  return {"association probabilities sum to one", worst <= 1e-6,
          fmt("max |sum - 1| = %.3g (tol %g)", worst, 1e-6)};
}

// the serving-link law integrates to one over the road
inline PropertyCheck serving_density_normalization() {
  double worst = 0;
  for (const char* name : {"urban", "rural"}) {
    Scenario sc =
        std::string(name) == "urban" ? urban_scenario() : rural_scenario();
    AnalyticModel m(sc);
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    const double mass =
        integrate_to_infinity(
            [&](double x) {
              return m.serving_density_along(LinkState::los, x) +
                     m.serving_density_along(LinkState::nlos, x);
            },
            0.0, spec)
            .value;
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  return {"serving-link density integrates to one", worst <= 1e-6,
          fmt("max |mass - 1| = %.3g (tol %g)", worst, 1e-6)};
}

// with decaying blockage the unobstructed process is finite almost surely,
// so the nearest-unobstructed-unit law is defective with closed-form mass
inline PropertyCheck nearest_los_defect_mass() {
  const Scenario sc = urban_scenario();
  AnalyticModel m(sc);
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  const double mass =
      integrate_to_infinity(
          [&](double x) { return m.nearest_density_along(LinkState::los, x); },
          0.0, spec)
          .value;
  const double expected =
      1.0 - std::exp(-2.0 * sc.bs_density_per_m *
                     sc.blockage.integrated_p_los_limit());
  return {"nearest-unobstructed law has closed-form mass",
          std::abs(mass - expected) <= 1e-6,
          fmt("mass = %.10g vs closed form %.10g (tol %g)", mass, expected,
              1e-6)};
}

// an arbitrarily easy SINR target is met almost surely
inline PropertyCheck coverage_limit_at_zero_threshold() {
  double worst = 0;
  for (const char* name : {"urban", "rural"}) {
    Scenario sc =
        std::string(name) == "urban" ? urban_scenario() : rural_scenario();
    AnalyticModel m(sc);
    worst = std::max(worst, std::abs(m.coverage_probability(1e-9) - 1.0));
  }
  return {"coverage tends to one as the threshold vanishes", worst <= 1e-4,
          fmt("max |coverage(1e-9) - 1| = %.3g (tol %g)", worst, 1e-4)};
}

// staying served for a slot means the footprint outlasts the travel distance
inline PropertyCheck footprint_cdf_identity() {
  double worst = 0;
  for (double slot_s : {0.1, 0.3, 1.0}) {
    Scenario sc = urban_scenario();
    sc.slot_s = slot_s;
    AnalyticModel m(sc);
    const double lhs = m.footprint_cdf(sc.speed_mps * sc.slot_s);
    const double rhs = 1.0 - m.no_leave_probability();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {"footprint law matches the no-leave complement", worst <= 1e-6,
          fmt("max |F(v T) - (1 - P_stay)| = %.3g (tol %g)", worst, 1e-6)};
}

// constant blockage thins the line uniformly, so the nearest-unit law is a
// plain exponential in the along-road coordinate; check the quadrature-based
// radial density against it
inline PropertyCheck rural_nearest_closed_form() {
  const Scenario sc = rural_scenario();
  AnalyticModel m(sc);
  const double p = sc.blockage.p_los(0.0);
  const double rate = 2.0 * sc.bs_density_per_m * p;
  double worst_rel = 0;
  for (double r : {8.0, 20.0, 75.0, 300.0}) {
    const double x = sc.along_distance(r);
    const double density = m.nearest_density_along(LinkState::los, x);
    const double closed = rate * std::exp(-rate * x);
    worst_rel = std::max(worst_rel, std::abs(density / closed - 1.0));
  }
  return {"uniform thinning reduces to the exponential law",
          worst_rel <= 1e-10,
          fmt("max relative error = %.3g (tol %g)", worst_rel, 1e-10)};
}

// the no-leave probability moves the right way along every scenario knob
inline PropertyCheck no_leave_monotonicity() {
  const auto no_leave = [](double dens_km, double speed_kmh, double slot_s,
                           double beam_deg) {
    Scenario sc = urban_scenario();
    sc.bs_density_per_m = dens_km / 1000.0;
    sc.speed_mps = kmh_to_mps(speed_kmh);
    sc.slot_s = slot_s;
    sc.antenna = antenna_preset(beam_deg);
    return AnalyticModel(sc).no_leave_probability();
  };
  bool pass = true;
  std::string detail;
  const auto expect_order = [&](const char* knob, double a, double b) {
    if (!(a > b)) {
      pass = false;
      detail += std::string(knob) + " violated; ";
    }
  };
  // denser deployments serve from closer units with shorter footprints
  expect_order("density", no_leave(2.0, 100, 0.3, 30),
               no_leave(10.0, 100, 0.3, 30));
  expect_order("density", no_leave(10.0, 100, 0.3, 30),
               no_leave(40.0, 100, 0.3, 30));
  // faster receivers cross a footprint sooner
  expect_order("speed", no_leave(10.0, 60, 0.3, 30),
               no_leave(10.0, 100, 0.3, 30));
  expect_order("speed", no_leave(10.0, 100, 0.3, 30),
               no_leave(10.0, 140, 0.3, 30));
  // longer slots leave more time to walk out of the beam
  expect_order("slot", no_leave(10.0, 100, 0.1, 30),
               no_leave(10.0, 100, 0.3, 30));
  expect_order("slot", no_leave(10.0, 100, 0.3, 30),
               no_leave(10.0, 100, 1.0, 30));
  // wider beams paint longer footprints
  if (!(no_leave(10.0, 100, 0.3, 90) > no_leave(10.0, 100, 0.3, 60) &&
        no_leave(10.0, 100, 0.3, 60) > no_leave(10.0, 100, 0.3, 30))) {
    pass = false;
    detail += "beamwidth violated; ";
  }
  if (pass) detail = "all orderings hold";
  return {"no-leave responds monotonically to density/speed/slot/beamwidth",
          pass, detail};
}

// identical seeds reproduce bit-identically across runs and thread counts
inline PropertyCheck simulator_determinism() {
  Scenario sc = urban_scenario();
  SimOptions opt;
  opt.trials = 4000;
  opt.block_size = 512;
  opt.seed = 42;

  opt.threads = 1;
  const SimResult serial = simulate_serial(sc, opt);
  opt.threads = 4;
  const SimResult parallel = simulate(sc, opt);
  const SimResult again = simulate(sc, opt);
  SimOptions reseeded = opt;
  reseeded.seed = 43;
  const SimResult other = simulate(sc, reseeded);

  const auto same = [](const SimResult& a, const SimResult& b) {
    return a.coverage.value == b.coverage.value &&
           a.no_leave.value == b.no_leave.value &&
           a.mean_rate.value == b.mean_rate.value &&
           a.throughput.value == b.throughput.value;
  };
  const bool pass =
      same(serial, parallel) && same(parallel, again) && !same(parallel, other);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "serial==4-thread: %s, rerun identical: %s, reseed differs: %s",
                same(serial, parallel) ? "yes" : "NO",
                same(parallel, again) ? "yes" : "NO",
                !same(parallel, other) ? "yes" : "NO");
  return {"fixed seeds are bit-reproducible across thread counts", pass, buf};
}

inline std::vector<PropertyCheck> run_all_properties() {
  return {
      association_partition(),      serving_density_normalization(),
      nearest_los_defect_mass(),    coverage_limit_at_zero_threshold(),
      footprint_cdf_identity(),     rural_nearest_closed_form(),
      no_leave_monotonicity(),      simulator_determinism(),
  };
}

}  // namespace mmv2i::checks
