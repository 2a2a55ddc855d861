#ifndef FHC_TEST_FIXTURES_HPP
#define FHC_TEST_FIXTURES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fhc/expfun.hpp"

namespace fhc::testing {

// Taylor polynomial of sin(pi z) / pi to degree 95 plus 1e-6 (e^{z} - e^{-z}).
// Close to z near even integers, so translates approximate the identity there,
// while the frequency hull is the horizontal segment [-1, 1].
inline FunctionExpr horizontal_hull_function() {
  ExpPolyTerm t;
  t.poly.assign(96, 0.0);
  for (int k = 1; k < 96; k += 2) {
    double v = 1.0;
    for (int j = 1; j <= k; ++j) v *= kPi / j;
    t.poly[static_cast<std::size_t>(k)] = ((k / 2) % 2 ? -1.0 : 1.0) * v / kPi;
  }
  FunctionExpr f;
  f.exppoly.add(t);
  f += FunctionExpr::exponential(1.0, 1e-6) + FunctionExpr::exponential(-1.0, -1e-6);
  return f;
}

inline ConvexCompact vertical_segment(double a, double b = 0.0) {
  return ConvexCompact::segment({0.0, b - a}, {0.0, b + a});
}

inline double rel_diff(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }
  ComplexPoint point(double r) { return {uniform(-r, r), uniform(-r, r)}; }
};

}  // namespace fhc::testing

#endif  // FHC_TEST_FIXTURES_HPP
