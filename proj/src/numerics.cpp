#include "mmv2i/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <vector>

namespace mmv2i {
namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1]; even-index nodes are the
// Kronrod extension, odd-index nodes carry the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double integral = 0;
  double error = 0;
  double resabs = 0;  // integral of |f|, bounds the attainable accuracy
};

PanelResult gk15(const Fn& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);

  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }

  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] *
              (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

  const double integral = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);

  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round_floor =
      50.0 * std::numeric_limits<double>::epsilon() * resabs;
  err = std::max(err, round_floor);
  return {integral, err, resabs};
}

struct Interval {
  double a, b, integral, error, resabs;
  bool operator<(const Interval& o) const { return error < o.error; }
};

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

QuadratureResult integrate(const Fn& f, double a, double b,
                           const QuadratureSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate: bounds must be finite");
  if (a > b) throw DomainError("integrate: reversed interval");
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<Interval> queue;
  PanelResult first = gk15(f, a, b);
  queue.push({a, b, first.integral, first.error, first.resabs});
  double total = first.integral;
  double total_err = first.error;
  double total_resabs = first.resabs;
  int n_intervals = 1;

  // the tolerance is clamped at the rounding floor of |f|'s mass, so a
  // request below machine-attainable accuracy converges instead of looping
  auto target = [&] {
    const double floor =
        100.0 * std::numeric_limits<double>::epsilon() * total_resabs;
    return std::max({spec.abs_tol, spec.rel_tol * std::abs(total), floor});
  };

  while (total_err > target()) {
    if (n_intervals >= spec.max_intervals)
      throw ConvergenceError("integrate: interval budget exhausted (error " +
                             format_g(total_err) + ", target " +
                             format_g(target()) + ")");
    Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw ConvergenceError("integrate: interval vanished before tolerance");
    PanelResult left = gk15(f, worst.a, mid);
    PanelResult right = gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    queue.push({worst.a, mid, left.integral, left.error, left.resabs});
    queue.push({mid, worst.b, right.integral, right.error, right.resabs});
    ++n_intervals;
  }
  return {total, total_err, n_intervals};
}

QuadratureResult integrate_to_infinity(const Fn& f, double a,
                                       const QuadratureSpec& spec) {
  if (!std::isfinite(a))
    throw DomainError("integrate_to_infinity: lower bound must be finite");

  double total = 0;
  double total_err = 0;
  int intervals = 0;
  double x = a;
  double h = std::max(1.0, 0.125 * std::abs(a));
  int quiet = 0;

  for (int panel = 0; panel < spec.max_tail_panels; ++panel) {
    QuadratureResult part = integrate(f, x, x + h, spec);
    total += part.value;
    total_err += part.error_estimate;
    intervals += part.intervals;
    x += h;
    h *= 2;

    const double scale =
        std::max(std::abs(total), spec.abs_tol / spec.tail_rel_cutoff);
    if (std::abs(part.value) <= spec.tail_rel_cutoff * scale) {
      if (++quiet >= spec.tail_quiet_panels)
        return {total, total_err, intervals};
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError(
      "integrate_to_infinity: integrand did not decay within the panel "
      "budget");
}

double find_root(const Fn& f, double lo, double hi, double x_tol) {
  if (!(lo < hi)) throw DomainError("find_root: reversed interval");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw BracketError("find_root: no sign change on the given interval");

  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= x_tol * std::max(1.0, std::abs(mid))) return mid;
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (fhi > 0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double find_root_increasing(const Fn& f, double lo, double first_step,
                            double x_tol) {
  if (first_step <= 0)
    throw DomainError("find_root_increasing: step must be positive");
  double flo = f(lo);
  if (flo == 0) return lo;
  if (flo > 0)
    throw BracketError("find_root_increasing: f already positive at lo");

  double step = first_step;
  double hi = lo;
  for (int i = 0; i < 200; ++i) {
    hi += step;
    step *= 2;
    if (f(hi) >= 0) return find_root(f, lo, hi, x_tol);
  }
  throw BracketError("find_root_increasing: no sign change found");
}

}  // namespace mmv2i
