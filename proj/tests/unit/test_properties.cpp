#include <doctest.h>

#include <cmath>

#include "fhc/borel.hpp"
#include "fhc/carleman.hpp"
#include "fhc/constructor.hpp"
#include "fhc/expk_space.hpp"
#include "fixtures.hpp"

using namespace fhc;
using fhc::testing::Rng;

namespace {

std::vector<ComplexPoint> random_points(Rng& rng, int n, double r) {
  std::vector<ComplexPoint> v;
  for (int i = 0; i < n; ++i) v.push_back(rng.point(r));
  return v;
}

FunctionExpr random_expr(Rng& rng) {
  FunctionExpr f;
  const int blocks = rng.integer(0, 3), exps = rng.integer(blocks == 0 ? 1 : 0, 2);
  for (int i = 0; i < blocks; ++i) f.blocks.push_back({rng.point(1.0), {rng.point(1.0), 0.0, rng.point(0.5)}});
  for (int i = 0; i < exps; ++i) f += FunctionExpr::exponential(rng.point(1.0), rng.point(1.0));
  return f;
}

}  // namespace

TEST_CASE("support function is sublinear and positively homogeneous") {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    const auto pts = random_points(rng, rng.integer(1, 8), 2.0);
    const auto K = hull(pts);
    const auto a = rng.point(3.0), b = rng.point(3.0);
    const double t = rng.uniform(0.0, 5.0);
    CHECK(K.support(a + b) <= K.support(a) + K.support(b) + 1e-12);
    CHECK(K.support(t * a) == doctest::Approx(t * K.support(a)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("hull of a union has the max support; hull is idempotent") {
  Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    auto p = random_points(rng, 5, 2.0), q = random_points(rng, 5, 2.0);
    const auto P = hull(p), Q = hull(q);
    p.insert(p.end(), q.begin(), q.end());
    const auto U = hull(p);
    const auto z = rng.point(2.0);
    CHECK(U.support(z) == doctest::Approx(std::max(P.support(z), Q.support(z))).epsilon(1e-13).scale(1.0));
    CHECK(same_vertices(hull(U.vertices()), U));
  }
}

TEST_CASE("translations compose and modulation shifts the frequency hull") {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_expr(rng);
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
    const auto z = rng.point(3.0);
    const auto lhs = evaluate(translate(translate(f, a), b), z), rhs = evaluate(translate(f, a + b), z);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(rhs)));
    const auto beta = rng.point(1.0);
    if (is_zero_function(f)) continue;
    const auto H = frequency_hull(f), Hm = frequency_hull(modulate(f, beta));
    const auto w = std::polar(1.0, rng.uniform(-kPi, kPi));
    CHECK(Hm.support(w) == doctest::Approx(H.support(w) + (beta * w).real()).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("Borel closed form is linear") {
  Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_expr(rng), g = random_expr(rng);
    const auto z = std::polar(8.0, rng.uniform(-kPi, kPi));
    const auto sum = borel_closed_form(f + g)(z), parts = borel_closed_form(f)(z) + borel_closed_form(g)(z);
    CHECK(std::abs(sum - parts) <= 1e-12 * (1 + std::abs(parts)));
  }
}

TEST_CASE("Taylor coefficients of f_alpha never vanish") {
  Rng rng(55);
  for (int i = 0; i < 100; ++i) {
    auto alpha = rng.point(2.0);
    if (std::abs(alpha) < 1e-3) alpha = 0.5;
    for (const auto& c : taylor_coefficients(FunctionExpr::block(alpha), 50)) CHECK(std::abs(c) > 0.0);
  }
}

TEST_CASE("zero counts are additive over adjacent boxes") {
  Rng rng(56);
  for (int i = 0; i < 20; ++i) {
    ExpPolyTerm t;
    t.poly = {1.0};
    for (int k = 0; k < 4; ++k) {
      const auto r = rng.point(1.0);
      std::vector<ComplexPoint> next(t.poly.size() + 1);
      for (std::size_t j = 0; j < t.poly.size(); ++j) {
        next[j + 1] += t.poly[j];
        next[j] -= r * t.poly[j];
      }
      t.poly = next;
    }
    FunctionExpr f;
    f.exppoly.add(t);
    const double cut = rng.uniform(-0.9, 0.9);
    const int whole = count_zeros(f, {-1.3, 1.3, -1.3, 1.3});
    CHECK(whole == 4);
    CHECK(count_zeros(f, {-1.3, cut, -1.3, 1.3}) + count_zeros(f, {cut, 1.3, -1.3, 1.3}) == whole);
  }
}

TEST_CASE("Carleman left side is nondecreasing in R") {
  Rng rng(57);
  ZeroList z;
  for (int i = 0; i < 30; ++i) z.zeros.push_back({rng.point(20.0), rng.integer(1, 2)});
  double prev = -HUGE_VAL;
  for (double R = 1.0; R <= 40.0; R *= 1.3) {
    const double v = carleman_lhs(z, R);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("norms are monotone in K and in n") {
  Rng rng(58);
  const auto small = fhc::testing::vertical_segment(1.0), large = fhc::testing::vertical_segment(2.0);
  SamplingSpec g;
  g.radii = 16;
  g.angles = 32;
  for (int i = 0; i < 10; ++i) {
    FunctionExpr f = FunctionExpr::block({0.0, rng.uniform(-0.5, 0.5)}, rng.point(1.0));
    f += FunctionExpr::exponential({0.0, rng.uniform(-1, 1)}, rng.point(1.0));
    const double a = norm_estimate(f, {small, 1}, 20.0, g).value;
    CHECK(norm_estimate(f, {large, 1}, 20.0, g).value <= a * (1 + 1e-12));
    CHECK(norm_estimate(f, {small, 2}, 20.0, g).value >= a * (1 - 1e-12));
  }
}

TEST_CASE("growth ratio never exceeds the placement series") {
  Rng rng(59);
  const auto K = fhc::testing::vertical_segment(1.0);
  const auto targets = enumerate_targets(1.0, 4);
  for (int i = 0; i < 5; ++i) {
    Schedule s;
    long slot = 0;
    for (int j = 0; j < 20; ++j) s.assignments.push_back({slot += rng.integer(1, 15), rng.integer(1, 4)});
    const auto c = build_candidate(targets, s, K);
    const auto g = growth_check(c, 200.0, GrowthSpec::log());
    CHECK(g.ratio <= g.placement_series * (1 + 1e-12));
  }
}

TEST_CASE("evaluation is deterministic") {
  Rng rng(60);
  const auto f = random_expr(rng);
  const auto zs = random_points(rng, 100, 5.0);
  CHECK(evaluate_many(f, zs) == evaluate_many(f, zs));
}
