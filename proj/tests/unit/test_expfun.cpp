#include <doctest.h>

#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "fhc/error.hpp"
#include "fhc/expfun.hpp"
#include "fixtures.hpp"

using namespace fhc;
using fhc::testing::Rng;
namespace mp = boost::multiprecision;
using C50 = mp::cpp_complex_50;

namespace {

C50 c50(ComplexPoint z) { return C50(z.real(), z.imag()); }
ComplexPoint to_c(const C50& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// (e^{alpha (z - s)} - 1)^2 / (z - s)^2 * e^{beta z} in 50 digits
C50 block50(ComplexPoint alpha, double s, ComplexPoint beta, ComplexPoint z) {
  const C50 w = c50(z) - C50(s);
  const C50 e = exp(c50(alpha) * w) - C50(1);
  return e * e / (w * w) * exp(c50(beta) * c50(z));
}

double rel(ComplexPoint a, ComplexPoint b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("block evaluation against 50-digit arithmetic") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto alpha = rng.point(2.0);
    const double s = rng.integer(0, 3) == 0 ? 0.0 : rng.uniform(-5, 5);
    const auto beta = rng.integer(0, 1) ? ComplexPoint{} : rng.point(1.0);
    // include points near the removable singularity z = s
    const auto z = rng.integer(0, 3) == 0 ? ComplexPoint(s) + rng.point(1e-3) : rng.point(20.0);
    FunctionExpr f;
    f.blocks.push_back({1.0, {alpha, s, beta}});
    const auto exact = to_c(block50(alpha, s, beta, z));
    CHECK(rel(evaluate(f, z), exact) < 1e-12);
  }
}

TEST_CASE("exponential polynomial evaluation against 50-digit arithmetic") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    ExpPolyTerm t;
    for (int j = 0; j < 4; ++j) t.poly.push_back(rng.point(1.0));
    t.freq = rng.point(1.5);
    FunctionExpr f;
    f.exppoly.add(t);
    const auto z = rng.point(10.0);
    C50 p = 0;
    for (int j = 3; j >= 0; --j) p = p * c50(z) + c50(t.poly[static_cast<std::size_t>(j)]);
    CHECK(rel(evaluate(f, z), to_c(p * exp(c50(t.freq) * c50(z)))) < 1e-12);
  }
}

TEST_CASE("block kernel at the origin and its series boundary") {
  CHECK(std::abs(block_kernel(0.0) - 1.0) < 1e-15);
  for (double r : {0.4999999, 0.5, 0.5000001}) {
    const ComplexPoint w = std::polar(r, 0.7);
    const C50 e = exp(c50(w)) - C50(1);
    CHECK(rel(block_kernel(w), to_c(e * e / (c50(w) * c50(w)))) < 1e-14);
  }
}

TEST_CASE("Taylor coefficients of f_alpha are alpha^{m+2} (2^{m+2} - 2) / (m+2)!") {
  for (ComplexPoint alpha : {ComplexPoint(0, 0.3), ComplexPoint(1, 0), ComplexPoint(-0.5, 0.2)}) {
    const auto c = taylor_coefficients(FunctionExpr::block(alpha), 40);
    for (int m = 0; m < 40; ++m) {
      // exact rational g_m
      mp::cpp_int fact = 1;
      for (int j = 2; j <= m + 2; ++j) fact *= j;
      const mp::cpp_int num = (mp::cpp_int(1) << (m + 2)) - 2;
      const C50 g = C50(mp::cpp_bin_float_50(num) / mp::cpp_bin_float_50(fact));
      const C50 exact = g * pow(c50(alpha), m + 2);
      CHECK(rel(c[static_cast<std::size_t>(m)], to_c(exact)) < 1e-12);
    }
  }
}

TEST_CASE("Taylor coefficients of a shifted, modulated block reproduce the function") {
  FunctionExpr f;
  f.blocks.push_back({{0.5, -1.0}, {{0.2, 0.7}, 1.5, {0.1, -0.3}}});
  f += FunctionExpr::monomial(2, {0.0, 0.4}, 3.0);
  const auto c = taylor_coefficients(f, 60);
  for (ComplexPoint z : {ComplexPoint(0.3, 0.1), ComplexPoint(-0.7, 0.4)}) {
    ComplexPoint s = 0.0;
    for (int n = 59; n >= 0; --n) s = s * z + c[static_cast<std::size_t>(n)];
    CHECK(rel(s, evaluate(f, z)) < 1e-12);
  }
}

TEST_CASE("translation and modulation are exact identities") {
  Rng rng(23);
  FunctionExpr f = FunctionExpr::block({0.0, 0.5}, 2.0) + FunctionExpr::monomial(3, {0.2, -0.1}, {1.0, 1.0});
  f.blocks.push_back({{0.0, 1.0}, {{0.1, 0.9}, -2.0, {0.0, 0.2}}});
  for (int i = 0; i < 50; ++i) {
    const double k = rng.uniform(-30, 30);
    const auto beta = rng.point(1.0);
    const auto z = rng.point(5.0);
    CHECK(rel(evaluate(translate(f, k), z), evaluate(f, z + k)) < 1e-10);
    CHECK(rel(evaluate(modulate(f, beta), z), std::exp(beta * z) * evaluate(f, z)) < 1e-12);
  }
}

TEST_CASE("evaluate_many agrees with evaluate") {
  Rng rng(24);
  FunctionExpr f;
  for (int j = 0; j < 20; ++j) f.blocks.push_back({rng.point(1.0), {{0.0, 0.25 * (j % 4 + 1)}, double(j), 0.0}});
  f += FunctionExpr::monomial(2, 0.3, 0.1) + FunctionExpr::exponential({0.0, 1.0});
  std::vector<ComplexPoint> zs;
  for (int i = 0; i < 500; ++i) zs.push_back(rng.point(40.0));
  zs.push_back(3.0);  // removable singularity of a shifted block
  const auto many = evaluate_many(f, zs);
  for (std::size_t i = 0; i < zs.size(); ++i) CHECK(std::abs(many[i] - evaluate(f, zs[i])) <= 1e-12 * (1 + std::abs(many[i])));
}

TEST_CASE("overflow is reported, scaled evaluation is not affected") {
  const auto f = FunctionExpr::exponential(1.0);
  CHECK_THROWS_AS(evaluate(f, 800.0), RangeError);
  CHECK(std::abs(evaluate_scaled(f, 800.0, 800.0) - 1.0) < 1e-12);
  CHECK(log_abs(f, 800.0) == doctest::Approx(800.0));
  CHECK(log_abs(FunctionExpr::sine_pi(), 2.0) < -30.0);
  CHECK(log_abs(FunctionExpr::constant(0.0), 2.0) == -HUGE_VAL);
}

TEST_CASE("frequency hulls") {
  const auto h = frequency_hull(FunctionExpr::block({0.0, 0.5}));
  CHECK(same_vertices(h, ConvexCompact::segment(0.0, {0.0, 1.0})));
  const auto s = frequency_hull(FunctionExpr::sine_pi());
  CHECK(same_vertices(s, ConvexCompact::segment({0, -kPi}, {0, kPi})));
  // cancelling terms do not survive
  const auto e = FunctionExpr::exponential(2.0) + FunctionExpr::exponential(2.0, -1.0) + FunctionExpr::constant(1.0);
  CHECK(same_vertices(frequency_hull(e), ConvexCompact::point(0.0)));
  CHECK(is_zero_function(FunctionExpr::exponential(2.0) + FunctionExpr::exponential(2.0, -1.0)));
  CHECK_THROWS_AS(frequency_hull(FunctionExpr{}), InputError);
  CHECK(exponential_type(FunctionExpr::block({3.0, 4.0})) == doctest::Approx(10.0));
}

TEST_CASE("indicator of exponentials and blocks") {
  const auto e = FunctionExpr::exponential({0.5, -1.0});
  for (double th : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    const auto s = indicator_estimate(e, th, 1.0, 200.0, 24);
    CHECK(s.value == doctest::Approx(0.5 * std::cos(th) + std::sin(th)).epsilon(1e-9));
    CHECK(s.stable);
  }
  const auto b = FunctionExpr::block({0.0, 1.0});
  // hull [0, 2i]: h(theta) = max(0, -2 sin theta)
  for (double th : {-kPi / 2, -1.0, 0.5, 2.0}) {
    const auto s = indicator_estimate(b, th, 1.0, 200.0, 24);
    CHECK(s.value == doctest::Approx(std::max(0.0, -2.0 * std::sin(th))).epsilon(0.01).scale(1.0));
  }
}

TEST_CASE("maximum modulus and type") {
  const auto e = FunctionExpr::exponential({0.0, 2.0});
  CHECK(max_modulus(e, 3.0) == doctest::Approx(std::exp(6.0)).epsilon(1e-9));
  CHECK(type_estimate(FunctionExpr::sine_pi(), 200.0) == doctest::Approx(kPi).epsilon(0.01));
}
