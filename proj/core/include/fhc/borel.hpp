#ifndef FHC_BOREL_HPP
#define FHC_BOREL_HPP

#include <functional>
#include <vector>

#include "fhc/complex_geometry.hpp"
#include "fhc/expfun.hpp"

namespace fhc {

// sum_j coefs[j] / (z - at)^{j+1}; order = coefs.size().
struct PoleTerm {
  ComplexPoint at{};
  std::vector<ComplexPoint> coefs;
  int order() const noexcept { return static_cast<int>(coefs.size()); }
};

// Rational function vanishing at infinity, stored by its principal parts.
struct RationalExpr {
  std::vector<PoleTerm> poles;

  ComplexPoint operator()(ComplexPoint z) const;
  bool empty() const noexcept { return poles.empty(); }
};

// Principal parts at equal locations are added; zero parts are dropped.
RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);

// z^k e^{alpha z} -> k! / (z - alpha)^{k+1}, term by term.
RationalExpr borel_closed_form(const ExpPolyFunction& f);

// c (z - w) Log(z - w); a block f_alpha(z) e^{beta z} contributes three of these.
struct LogTerm {
  ComplexPoint at{};
  ComplexPoint coef{};
};

//
// Closed-form Borel transform of an expression whose blocks are all
// unshifted. The log terms come with coefficients summing to zero together
// with their first moments, so the branch cuts can be rotated to point away
// from any evaluation point and the value is single-valued off the hull of
// the branch points.
//
struct BorelClosedForm {
  RationalExpr rational;
  std::vector<LogTerm> logs;

  ComplexPoint operator()(ComplexPoint z) const;
};

// Throws InputError when f has a block with nonzero shift.
BorelClosedForm borel_closed_form(const FunctionExpr& f);

struct SeriesValue {
  ComplexPoint value{};
  double last_term = 0.0;    // modulus of the final summand, a truncation indicator
  bool outside_radius = false;  // evaluation point where the series need not converge
};

// sum_{n < terms} f^{(n)}(0) / z^{n+1}; outside_radius when |z| <= type.
SeriesValue borel_series(const FunctionExpr& f, ComplexPoint z, int terms);

// sum_{n < terms} f^{(n)}(0) z^n; outside_radius when |z| * type >= 1.
SeriesValue transposed_borel(const FunctionExpr& f, ComplexPoint z, int terms);

// Hull of the pole locations. Throws InputError when there are none.
ConvexCompact singular_hull(const RationalExpr& b);
// Hull of pole locations and log branch points.
ConvexCompact singular_hull(const BorelClosedForm& b);

// (1 / 2 pi i) times the contour integral of g over the circle |z - center| = radius,
// by the trapezoid rule.
ComplexPoint contour_residue(const std::function<ComplexPoint(ComplexPoint)>& g,
                             ComplexPoint center, double radius = 0.1, int nodes = 256);

}  // namespace fhc

#endif  // FHC_BOREL_HPP
