#include <doctest.h>

#include <cmath>

#include "fhc/carleman.hpp"
#include "fhc/constructor.hpp"
#include "fhc/error.hpp"
#include "fixtures.hpp"

using namespace fhc;

namespace {

// (z - a)(z - b)(z - c) as an exponential polynomial with frequency 0
FunctionExpr cubic(ComplexPoint a, ComplexPoint b, ComplexPoint c) {
  ExpPolyTerm t;
  t.poly = {-a * b * c, a * b + b * c + a * c, -(a + b + c), 1.0};
  FunctionExpr f;
  f.exppoly.add(t);
  return f;
}

}  // namespace

TEST_CASE("argument principle counts polynomial zeros") {
  const auto f = cubic({0.3, 0.2}, {-0.5, 0.1}, {0.1, 0.8});
  CHECK(count_zeros(f, {-1, 1, -1, 1}) == 3);
  CHECK(count_zeros(f, {0, 1, -1, 1}) == 2);
  CHECK(count_zeros(f, {-1, 0, -1, 1}) == 1);
  CHECK(count_zeros(f, {2, 3, 2, 3}) == 0);
  const auto d = count_zeros_detailed(f, {-1, 1, -1, 1});
  CHECK(std::abs(d.winding - 3.0) < 1e-6);
}

TEST_CASE("a zero on the contour is avoided by moving the edges") {
  const auto f = cubic({0.0, 0.0}, {5, 5}, {6, 6});
  const auto d = count_zeros_detailed(f, {0.0, 1.0, -1.0, 1.0});
  CHECK(d.jiggles > 0);
  CHECK((d.count == 0 || d.count == 1));
}

TEST_CASE("sine zeros are the integers") {
  const auto zl = locate_zeros(FunctionExpr::sine_pi(), {0.5, 20.5, -1, 1});
  REQUIRE(zl.total() == 20);
  for (std::size_t k = 0; k < zl.zeros.size(); ++k) {
    CHECK(std::abs(zl.zeros[k].location - ComplexPoint(double(k + 1), 0.0)) < 1e-8);
    CHECK(zl.zeros[k].multiplicity == 1);
  }
  CHECK(zl.count_within(10.5) == 10);
}

TEST_CASE("double zeros of a building block") {
  // f_{i pi}(z) = (e^{i pi z} - 1)^2 / z^2 vanishes doubly at even nonzero integers
  const auto zl = locate_zeros(FunctionExpr::block({0.0, kPi}), {0.5, 8.5, -1, 1});
  REQUIRE(zl.zeros.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(zl.zeros[k].location - ComplexPoint(2.0 * (k + 1), 0.0)) < 1e-5);
    CHECK(zl.zeros[k].multiplicity == 2);
  }
}

TEST_CASE("Newton refinement") {
  const auto f = cubic({0.3, 0.2}, {-0.5, 0.1}, {0.1, 0.8});
  CHECK(std::abs(newton_refine(f, {0.28, 0.25}) - ComplexPoint(0.3, 0.2)) < 1e-12);
}

TEST_CASE("Carleman left side equals the direct sum") {
  ZeroList ten;
  for (int k = 1; k <= 10; ++k) ten.zeros.push_back({{double(k), 0.0}, 1});
  double direct = 0.0;
  for (int k = 1; k <= 10; ++k) direct += 1.0 / k - k / (10.5 * 10.5);
  CHECK(carleman_lhs(ten, 10.5) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(carleman_lhs(ten, 10.5) == doctest::Approx(2.43010204).epsilon(1e-8));
  // zeros in the left half-plane or beyond R do not count
  ZeroList other{{{{-1.0, 0.0}, 1}, {{20.0, 0.0}, 1}}};
  CHECK(carleman_lhs(other, 10.0) == 0.0);
}

TEST_CASE("Carleman right side for exponentials and constants") {
  // e^z: the arc integral is (1 / pi R) int R cos^2 = 1/2, the axis term vanishes
  const auto e = carleman_rhs(FunctionExpr::exponential(1.0), 10.0);
  CHECK(e.value() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(e.axis) < 1e-12);
  const auto one = carleman_rhs(FunctionExpr::constant(1.0), 10.0);
  CHECK(std::abs(one.value()) < 1e-12);
  CHECK_FALSE(one.origin_zero);
  CHECK(carleman_rhs(FunctionExpr::sine_pi(), 10.0).origin_zero);
}

TEST_CASE("Carleman residual is flat for 2 cosh z") {
  const auto f = FunctionExpr::exponential(1.0) + FunctionExpr::exponential(-1.0);
  const auto s = carleman_series(f, {10, 20, 40});
  CHECK(s.zeros.total() == 0);
  CHECK(s.range < 1e-4);
}

TEST_CASE("density bound") {
  CHECK(density_bound(ConvexCompact::segment({0, -kPi}, {0, kPi}), 0.0) == doctest::Approx(1.0));
  CHECK(density_bound(ConvexCompact::segment({-1, 0}, {1, 0}), 0.3) == 0.0);
  CHECK(density_bound(ConvexCompact::segment({0, -1}, {0, 1}), kPi / 3) == doctest::Approx(2.0 / kPi));
  CHECK_THROWS_AS(density_bound(ConvexCompact::point(0.0), kPi / 2), InputError);
}

TEST_CASE("zero density and counting slope") {
  ZeroList z;
  for (int k = 1; k <= 400; ++k) z.zeros.push_back({{double(k), 0.0}, 1});
  CHECK(zero_lower_density(z, 400) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(counting_slope(z, {50, 100, 200, 400}) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(zero_lower_density(ZeroList{}, 10) == 0.0);
}

TEST_CASE("obstruction check") {
  const auto rep = obstruction_check(fhc::testing::horizontal_hull_function(), 8);
  CHECK(rep.bound == 0.0);
  CHECK(rep.measured_density > 0.0);
  CHECK(rep.verdict == Verdict::Obstructed);
  CHECK(to_string(rep.verdict) == "OBSTRUCTED");
  const auto sine = obstruction_check(FunctionExpr::sine_pi(), 20);
  CHECK(sine.passing_slots.empty());
  CHECK(sine.verdict == Verdict::Consistent);
}

TEST_CASE("Rouche: a slot approximating z carries a zero nearby") {
  const auto f = fhc::testing::horizontal_hull_function();
  const auto rep = obstruction_check(f, 8);
  for (long n : rep.passing_slots) {
    const double x = static_cast<double>(n);
    CHECK(count_zeros(f, {x - 0.5, x + 0.5, -0.5, 0.5}) >= 1);
  }
}
