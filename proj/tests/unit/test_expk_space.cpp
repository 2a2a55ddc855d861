#include <doctest.h>

#include <cmath>

#include "fhc/error.hpp"
#include "fhc/expk_space.hpp"
#include "fixtures.hpp"

using namespace fhc;
using fhc::testing::Rng;
using fhc::testing::vertical_segment;

namespace {

// Brute-force weighted sup on a dense polar grid.
double dense_sup(const FunctionExpr& f, const ExpKNorm& norm, double r_max) {
  double best = 0.0;
  for (int i = 0; i <= 800; ++i) {
    const double r = r_max * i / 800.0;
    for (int j = 0; j < 720; ++j) {
      const auto z = std::polar(r, 2 * kPi * j / 720);
      const double w = -norm.K.support(z) - r / norm.n;
      best = std::max(best, std::abs(evaluate_scaled(f, z, -w)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("exponential inside K has norm exactly 1, attained at the origin") {
  const auto K = vertical_segment(1.0);
  for (ComplexPoint a : {ComplexPoint(0, 0.5), ComplexPoint(0, -1), ComplexPoint(0, 0)}) {
    const auto e = norm_estimate(FunctionExpr::exponential(a), {K, 1}, 40.0);
    CHECK(e.bounded);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e.argmax) < 1e-9);
  }
}

TEST_CASE("z e^{-|z|/n} has norm n / e") {
  for (int n : {1, 2, 3}) {
    const auto e = norm_estimate(FunctionExpr::monomial(1), {ConvexCompact::point(0.0), n}, 40.0);
    CHECK(e.value == doctest::Approx(n / std::exp(1.0)).epsilon(1e-9));
    CHECK(std::abs(e.argmax) == doctest::Approx(n).epsilon(1e-4));
  }
}

TEST_CASE("grid sup agrees with a dense brute-force sup") {
  const auto K = vertical_segment(1.0);
  FunctionExpr f = FunctionExpr::block({0.0, 0.5}) + FunctionExpr::block({0.0, -0.3}, {0.0, 2.0});
  f += translate(FunctionExpr::block({0.0, 0.25}, 3.0), -4.0);
  const ExpKNorm nk{K, 2};
  const double est = norm_estimate(f, nk, 20.0).value;
  const double brute = dense_sup(f, nk, 20.0);
  CHECK(est >= brute * (1 - 1e-9));
  CHECK(est == doctest::Approx(brute).epsilon(1e-3));
}

TEST_CASE("unbounded norms carry a witness direction") {
  const auto K = vertical_segment(1.0);
  const auto e = norm_estimate(FunctionExpr::exponential(2.0), {K, 1}, 20.0);
  CHECK_FALSE(e.bounded);
  CHECK(std::isinf(e.value));
  CHECK(std::abs(e.witness_theta) < 1e-6);
  CHECK(e.min_gap == doctest::Approx(-1.0).epsilon(1e-9));
  // zero gap: a pure exponential stays bounded, a polynomial factor does not
  const auto point = ConvexCompact::point(0.0);
  CHECK(norm_estimate(FunctionExpr::exponential(1.0), {point, 1}, 20.0).bounded);
  CHECK_FALSE(norm_estimate(FunctionExpr::monomial(1, 1.0), {point, 1}, 20.0).bounded);
}

TEST_CASE("tail certificate for blocks") {
  const auto e = norm_estimate(FunctionExpr::block({0.0, 0.5}), {vertical_segment(1.0), 1}, 60.0);
  CHECK(e.tail_certified);
  CHECK(e.tail_bound < 1e-12);
}

TEST_CASE("division by e_alpha is an isometry Exp(K) -> Exp(K - alpha)") {
  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    const auto K = ConvexCompact::segment(rng.point(1.0), rng.point(1.0));
    const auto f = FunctionExpr::exponential(K.vertices().front(), rng.point(1.0)) +
                   FunctionExpr::exponential(K.vertices().back(), rng.point(1.0));
    const auto alpha = rng.point(1.0);
    const double a = norm_estimate(f, {K, 2}, 20.0).value;
    const double b = norm_estimate(modulate(f, -alpha), {K.translated(-alpha), 2}, 20.0).value;
    CHECK(fhc::testing::rel_diff(a, b) < 1e-9);
  }
}

TEST_CASE("membership") {
  const auto K = vertical_segment(1.0);
  CHECK(membership(FunctionExpr::block({0.0, 0.5}), K).member);
  CHECK(membership(FunctionExpr{}, K).member);
  const auto m = membership(FunctionExpr::block({0.0, 0.6}), K);
  CHECK_FALSE(m.member);
  CHECK(std::sin(m.witness_theta) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_FALSE(membership(FunctionExpr::exponential(0.1), K).member);
}

TEST_CASE("sampling grid") {
  SamplingSpec g;
  const auto pts = sampling_points(20.0, g);
  CHECK(pts.front() == ComplexPoint{});
  double rmax = 0.0;
  for (const auto& z : pts) rmax = std::max(rmax, std::abs(z));
  CHECK(rmax == doctest::Approx(20.0));
  CHECK_THROWS_AS(norm_estimate(FunctionExpr::constant(1.0), {vertical_segment(1.0), 0}, 20.0), InputError);
  CHECK_THROWS_AS(norm_estimate(FunctionExpr::constant(1.0), {vertical_segment(1.0), 1}, 5.0), InputError);
}

TEST_CASE("series check: translates of an oscillating exponential do not decay") {
  SeriesOptions o;
  o.r_max = 20.0;
  o.grid.radii = 16;
  o.grid.angles = 32;
  const auto rep = criterion_series_check(FunctionExpr::exponential({0.0, 1.0}), {vertical_segment(1.0), 1}, 20, o);
  CHECK(rep.bounded);
  CHECK_FALSE(rep.converges);
  for (double a : rep.a) CHECK(a == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.partial_sums.back() == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("density fit reproduces a target that is in the span") {
  const auto K = vertical_segment(1.0);
  const std::vector<ComplexPoint> alphas{{0, 0.1}, {0, 0.25}, {0, -0.3}};
  const auto target = FunctionExpr::block({0, 0.25}, 2.0) + FunctionExpr::block({0, -0.3}, {0, -1.0});
  const auto fit = density_fit(target, alphas, {K, 1}, 20.0);
  CHECK(fit.well_conditioned);
  CHECK(fit.residual_max < 1e-12);
  CHECK(std::abs(fit.coefficients[0]) < 1e-9);
  CHECK(std::abs(fit.coefficients[1] - 2.0) < 1e-9);
  CHECK(std::abs(fit.coefficients[2] - ComplexPoint(0, -1)) < 1e-9);
  CHECK_THROWS_AS(density_fit(target, {{0, 0.1}, {0, 0.1}}, {K, 1}, 20.0), InputError);
  CHECK_THROWS_AS(density_fit(target, {{0, 0.9}}, {K, 1}, 20.0), InputError);
}
