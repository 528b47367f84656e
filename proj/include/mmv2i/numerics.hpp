#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mmv2i {

// Numerical failures are thrown, never silently absorbed: callers decide
// whether a looser tolerance or a different formulation is acceptable.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// tolerance not reached within the interval budget
struct ConvergenceError : NumericsError {
  using NumericsError::NumericsError;
};
// invalid inputs (reversed interval, non-finite bounds, bad parameters)
struct DomainError : NumericsError {
  using NumericsError::NumericsError;
};
// root bracketing failed (no sign change found)
struct BracketError : NumericsError {
  using NumericsError::NumericsError;
};

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  int max_intervals = 4000;
  // semi-infinite integrals stop once this many consecutive panels each
  // contribute less than tail_rel_cutoff of the running total
  double tail_rel_cutoff = 1e-12;
  int tail_quiet_panels = 3;
  int max_tail_panels = 200;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  int intervals = 0;
};

using Fn = std::function<double(double)>;

// adaptive Gauss-Kronrod 7/15 on [a, b]
QuadratureResult integrate(const Fn& f, double a, double b,
                           const QuadratureSpec& spec = {});

// [a, inf) for integrands that eventually decay: fixed-start panels whose
// width doubles until the contributions are negligible
QuadratureResult integrate_to_infinity(const Fn& f, double a,
                                       const QuadratureSpec& spec = {});

// bisection root of a sign-changing continuous f on [lo, hi]
double find_root(const Fn& f, double lo, double hi, double x_tol = 1e-12);

// root of an increasing-through-zero f starting from lo: expands the upper
// bound geometrically until the sign changes, then bisects
double find_root_increasing(const Fn& f, double lo, double first_step,
                            double x_tol = 1e-12);

}  // namespace mmv2i
