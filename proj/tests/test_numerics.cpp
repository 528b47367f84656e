#include <doctest.h>

#include <cmath>

#include "mmv2i/numerics.hpp"

using namespace mmv2i;

TEST_SUITE("numerics") {

TEST_CASE("polynomial integral is near-exact") {
  auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("oscillatory integral converges adaptively") {
  // integral of sin(x) over [0, 9.5 pi] is exactly 1; a single 15-point
  // panel cannot resolve ~5 oscillations, so subdivision must happen
  const double pi = 3.14159265358979323846;
  auto r = integrate([](double x) { return std::sin(x); }, 0.0, 9.5 * pi);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.intervals > 1);
}

TEST_CASE("zero-valued oscillatory integral hits the roundoff floor") {
  // full periods, exact value 0: the relative target collapses, so
  // convergence relies on the roundoff floor instead of spinning until
  // the interval budget is exhausted
  const double pi = 3.14159265358979323846;
  auto r = integrate([](double x) { return std::sin(x); }, 0.5,
                     0.5 + 10.0 * pi);
  CHECK(std::abs(r.value) < 1e-12);
  CHECK(r.intervals > 1);
}

TEST_CASE("integrable endpoint singularity") {
  // integral of 1/sqrt(x) over (0, 1] = 2
  QuadratureSpec spec;
  spec.rel_tol = 1e-7;
  spec.abs_tol = 1e-9;
  spec.max_intervals = 100000;
  auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0,
                     spec);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("exponential decay to infinity") {
  auto r = integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("gaussian tail to infinity") {
  // integral of exp(-x^2) over [1, inf) = sqrt(pi)/2 * erfc(1)
  auto r = integrate_to_infinity(
      [](double x) { return std::exp(-x * x); }, 1.0);
  CHECK(r.value == doctest::Approx(0.139402792640331).epsilon(1e-11));
}

TEST_CASE("slow algebraic decay to infinity") {
  // integral of 1/(1+x^2) over [0, inf) = pi/2
  auto r = integrate_to_infinity(
      [](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
  CHECK(r.value == doctest::Approx(1.5707963267948966).epsilon(1e-9));
}

TEST_CASE("shifted start point") {
  // integral of e^-x over [3, inf) = e^-3
  auto r = integrate_to_infinity([](double x) { return std::exp(-x); }, 3.0);
  CHECK(r.value == doctest::Approx(std::exp(-3.0)).epsilon(1e-11));
}

TEST_CASE("reversed interval is a domain error") {
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0),
                  DomainError);
  CHECK(integrate([](double x) { return x; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("interval budget exhaustion is reported") {
  QuadratureSpec spec;
  spec.max_intervals = 2;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 0;
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0,
                1.0, spec),
      ConvergenceError);
}

TEST_CASE("non-decaying integrand exhausts the tail budget") {
  CHECK_THROWS_AS(
      integrate_to_infinity([](double) { return 1.0; }, 0.0),
      ConvergenceError);
}

TEST_CASE("bisection root") {
  auto root = find_root([](double x) { return std::exp(x) - 2.0; }, 0.0, 1.0);
  CHECK(root == doctest::Approx(std::log(2.0)).epsilon(1e-11));
}

TEST_CASE("root bracketing failures throw") {
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  BracketError);
  CHECK_THROWS_AS(
      find_root_increasing([](double) { return -1.0; }, 0.0, 1.0),
      BracketError);
}

TEST_CASE("expanding root search") {
  // f(x) = x^3 - 1000, root at 10, far beyond the first step
  auto root = find_root_increasing(
      [](double x) { return x * x * x - 1000.0; }, 0.0, 0.5);
  CHECK(root == doctest::Approx(10.0).epsilon(1e-11));
}

TEST_CASE("root at the lower endpoint") {
  CHECK(find_root_increasing([](double x) { return x; }, 0.0, 1.0) == 0.0);
}

}  // TEST_SUITE
