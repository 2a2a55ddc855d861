#include <doctest.h>

#include <cmath>

#include "fhc/quadrature.hpp"

using namespace fhc;

TEST_CASE("polynomials are integrated exactly") {
  const auto r = integrate_gk21([](double x) { return std::complex<double>(x * x * x - 2 * x, 1.0); }, -1.0, 3.0);
  CHECK(r.converged);
  CHECK(r.value.real() == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(r.value.imag() == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("oscillatory complex integrand") {
  const auto r = integrate_gk21([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, M_PI);
  CHECK(std::abs(r.value - std::complex<double>(0.0, 2.0)) < 1e-13);
}

TEST_CASE("endpoint and interior logarithmic singularities") {
  bool ok = false;
  CHECK(integrate_real([](double x) { return std::log(x); }, 0.0, 1.0, {}, &ok) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(ok);
  // int_0^{5/2} log|x - 1| dx = (3/2) log(3/2) - 5/2
  CHECK(integrate_real([](double x) { return std::log(std::abs(x - 1.0)); }, 0.0, 2.5) ==
        doctest::Approx(1.5 * std::log(1.5) - 2.5).epsilon(1e-8));
  // int_0^pi log sin = -pi log 2
  CHECK(integrate_real([](double x) { return std::log(std::sin(x)); }, 0.0, M_PI) ==
        doctest::Approx(-M_PI * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("interval budget is reported") {
  QuadratureOptions o;
  o.max_intervals = 3;
  o.abs_tol = o.rel_tol = 1e-15;
  const auto r = integrate_gk21([](double x) { return std::complex<double>(std::sin(200 * x), 0.0); }, 0.0, 10.0, o);
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations > 0);
}
