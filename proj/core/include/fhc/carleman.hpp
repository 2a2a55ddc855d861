#ifndef FHC_CARLEMAN_HPP
#define FHC_CARLEMAN_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "fhc/complex_geometry.hpp"
#include "fhc/expfun.hpp"

namespace fhc {

// Closed rectangle [x0, x1] x [y0, y1].
struct Box {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double size() const noexcept { return std::max(width(), height()); }
  ComplexPoint center() const noexcept { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(ComplexPoint z, double margin = 0.0) const noexcept;
};

struct ZeroCount {
  int count = 0;
  double winding = 0.0;   // unrounded (1 / 2 pi i) integral of f'/f
  Box box;                // contour actually used
  int jiggles = 0;
};

// Argument principle on the box boundary: adaptive Gauss-Kronrod on f'/f
// with closed-form f'. A boundary sample with |f| <= 1e-9 times the local
// exponential scale, or a winding number more than 0.1 from an integer, moves
// every edge by (+-) j * 1e-3 * size, j = 1..5; after that NumericError.
ZeroCount count_zeros_detailed(const FunctionExpr& f, const Box& box);
int count_zeros(const FunctionExpr& f, const Box& box);

struct Zero {
  ComplexPoint location{};
  int multiplicity = 1;
};

struct ZeroList {
  std::vector<Zero> zeros;  // sorted by modulus

  int total() const noexcept;
  // zeros with |z| <= r, multiplicity counted
  int count_within(double r) const noexcept;
};

// Bisects the longer side until a box holds exactly one zero (refined by
// Newton) or its side drops to max(resolution, 1e-3) (or every split line grazes
// a zero inside a box of side <= 0.1), where the whole count is
// reported as one zero of that multiplicity at the Newton-refined center.
ZeroList locate_zeros(const FunctionExpr& f, const Box& region, double resolution = 1e-6);

// Damped Newton for a zero of multiplicity m: at most 20 steps, the step is
// halved while |f| increases.
ComplexPoint newton_refine(const FunctionExpr& f, ComplexPoint z, int multiplicity = 1);

// sum over zeros with Re > 0 and |z| <= R of (1/r - r/R^2) cos(theta), with multiplicity.
double carleman_lhs(const ZeroList& zeros, double R);

struct CarlemanRhs {
  double axis = 0.0;   // (1/2 pi) int_{t_min}^R (1/t^2 - 1/R^2) log|f(it) f(-it)| dt
  double arc = 0.0;    // (1/pi R) int_{-pi/2}^{pi/2} log|f(R e^{i theta})| cos(theta) d theta
  // log|f(i t_min) f(-i t_min)|: the integrand numerator where the axis
  // integral is cut; the omitted piece is independent of R up to O(t_min / R^2).
  double cutoff_log_modulus = 0.0;
  bool origin_zero = false;  // f(0) = 0
  bool converged = true;

  double value() const noexcept { return axis + arc; }
};

CarlemanRhs carleman_rhs(const FunctionExpr& f, double R, double t_min = 1e-3);

struct CarlemanRow {
  double R = 0.0;       // requested radius
  double R_used = 0.0;  // after jiggling away from zero moduli
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

struct CarlemanSeries {
  std::vector<CarlemanRow> rows;
  ZeroList zeros;
  double range = 0.0;  // max - min residual
  double slope = 0.0;  // least-squares slope of residual against log R
};

// Zeros are located once in [x_min, 1.01 R_max] x [-1.01 R_max, 1.01 R_max].
CarlemanSeries carleman_series(const FunctionExpr& f, const std::vector<double>& radii,
                               double t_min = 1e-3, double x_min = 1e-3);

// Upper bound on the lower density of in-sector zeros: c / (pi cos gamma),
// c half the vertical extent of K.
double density_bound(const ConvexCompact& K, double gamma);

// Lower density of zero moduli, multiplicity counted, on the grid of [r/4, r].
double zero_lower_density(const ZeroList& zeros, double r);

// Least-squares slope of n(R) = #{|z| <= R} over the given radii.
double counting_slope(const ZeroList& zeros, const std::vector<double>& radii);

enum class Verdict { Consistent, Obstructed };
std::string to_string(Verdict v);

struct ObstructionReport {
  std::vector<long> passing_slots;  // sup_{|z| <= 1/2} |f(z + n) - z| < 1/2
  ZeroList zeros;                   // zeros found in the boxes around passing slots
  double measured_density = 0.0;
  double gamma = 0.0;
  double bound = 0.0;
  Verdict verdict = Verdict::Consistent;
};

// Near-identity translates give zeros by Rouché; their density is compared
// with density_bound(frequency_hull(f), gamma), gamma = max |arg| + 0.05.
ObstructionReport obstruction_check(const FunctionExpr& f, long horizon);

}  // namespace fhc

#endif  // FHC_CARLEMAN_HPP
