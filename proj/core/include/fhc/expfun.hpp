#ifndef FHC_EXPFUN_HPP
#define FHC_EXPFUN_HPP

#include <vector>

#include "fhc/complex_geometry.hpp"

namespace fhc {

// P(z) e^{freq z}; poly holds coefficients in ascending degree.
struct ExpPolyTerm {
  std::vector<ComplexPoint> poly;
  ComplexPoint freq{};
};

//
// Finite exponential polynomial sum_j P_j(z) e^{alpha_j z}.
//
// Terms with equal frequency are merged on insertion, trailing zero
// coefficients trimmed and identically-zero terms dropped.
//
class ExpPolyFunction {
 public:
  ExpPolyFunction() = default;
  explicit ExpPolyFunction(std::vector<ExpPolyTerm> terms);

  void add(ExpPolyTerm term);
  const std::vector<ExpPolyTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  ExpPolyFunction& operator+=(const ExpPolyFunction& other);
  ExpPolyFunction& operator*=(ComplexPoint c);

 private:
  std::vector<ExpPolyTerm> terms_;
};

// f_alpha(z - shift) * e^{modulation z}, with f_alpha(w) = (e^{alpha w} - 1)^2 / w^2.
struct BuildingBlock {
  ComplexPoint alpha{};
  double shift = 0.0;
  ComplexPoint modulation{};
};

struct WeightedBlock {
  ComplexPoint coef{1.0, 0.0};
  BuildingBlock block;
};

//
// Sum of weighted building blocks and an exponential polynomial. This is the
// closed-form representation every module works with: it is closed under
// translation z -> z + k, modulation by e^{beta z}, and scaling.
//
struct FunctionExpr {
  std::vector<WeightedBlock> blocks;
  ExpPolyFunction exppoly;

  static FunctionExpr constant(ComplexPoint c);
  static FunctionExpr exponential(ComplexPoint alpha, ComplexPoint coef = 1.0);
  static FunctionExpr monomial(int degree, ComplexPoint alpha = 0.0, ComplexPoint coef = 1.0);
  static FunctionExpr block(ComplexPoint alpha, ComplexPoint coef = 1.0);
  // sin(pi z) written as (e^{i pi z} - e^{-i pi z}) / (2i).
  static FunctionExpr sine_pi();

  std::size_t term_count() const noexcept;

  FunctionExpr& operator+=(const FunctionExpr& other);
  FunctionExpr& operator*=(ComplexPoint c);
};

FunctionExpr operator+(FunctionExpr a, const FunctionExpr& b);
FunctionExpr operator*(ComplexPoint c, FunctionExpr f);

// Every exponential atom c * z^j * e^{w z} / (z - s)^p appearing in f after
// expanding (e^{alpha w} - 1)^2 = e^{2 alpha w} - 2 e^{alpha w} + 1.
// Used for growth envelopes and tail certificates.
struct ExpAtom {
  ComplexPoint freq{};
  ComplexPoint offset{};     // exponent is freq * z + offset
  double coef_modulus = 0;   // |coefficient| (polynomial: sum |p_j| r^j bound uses poly)
  std::vector<double> poly_moduli;  // |p_j|, ascending; empty for block atoms
  double pole = 0.0;         // block atoms: the shift s of 1/(z - s)^2
  bool is_block = false;
};
std::vector<ExpAtom> expand_atoms(const FunctionExpr& f);

// --- evaluation -----------------------------------------------------------

// f(z). Throws RangeError when an exponent leaves the double range.
ComplexPoint evaluate(const FunctionExpr& f, ComplexPoint z);
// f at every point; blocks sharing a frequency share one exponential table.
// Same values as evaluate up to rounding.
std::vector<ComplexPoint> evaluate_many(const FunctionExpr& f, const std::vector<ComplexPoint>& zs);
// f(z) * e^{-log_scale}; lets callers work with weights like e^{-H_K(z)}
// without overflowing intermediate exponentials.
ComplexPoint evaluate_scaled(const FunctionExpr& f, ComplexPoint z, double log_scale);

struct ValueAndDerivative {
  ComplexPoint value;
  ComplexPoint derivative;
};
// (f(z), f'(z)) * e^{-log_scale}, f' by closed-form differentiation.
ValueAndDerivative evaluate_with_derivative_scaled(const FunctionExpr& f, ComplexPoint z,
                                                   double log_scale);
// Upper bound for log|f(z)| from the dominant exponent; a good log_scale.
double dominant_exponent(const FunctionExpr& f, ComplexPoint z);
// log|f(z)|, -inf at an exact zero; never overflows.
double log_abs(const FunctionExpr& f, ComplexPoint z);

// (e^w - 1)^2 / w^2 and its derivative; 30-term series for |w| < 1/2.
ComplexPoint block_kernel(ComplexPoint w);

// --- algebra --------------------------------------------------------------

// z -> f(z + k), exact: binomial re-expansion and block shifts.
FunctionExpr translate(const FunctionExpr& f, double k);
// z -> e^{beta z} f(z).
FunctionExpr modulate(const FunctionExpr& f, ComplexPoint beta);
// f^{(n)}(0) / n! for n < count.
std::vector<ComplexPoint> taylor_coefficients(const FunctionExpr& f, std::size_t count);

// Hull of the frequencies that survive after merging equal (shift, frequency)
// contributions. Throws InputError for the zero function.
ConvexCompact frequency_hull(const FunctionExpr& f);
bool is_zero_function(const FunctionExpr& f);

// Exact exponential type of an expression: max |u| over its frequency hull.
double exponential_type(const FunctionExpr& f);

// --- growth ---------------------------------------------------------------

// max_{|z| = r} |f(z)| from equispaced samples plus golden-section refinement.
double max_modulus(const FunctionExpr& f, double r, int samples = 2048);
double log_max_modulus(const FunctionExpr& f, double r, int samples = 2048);

struct IndicatorSample {
  double theta = 0.0;
  double value = 0.0;          // limsup estimate, -inf when everything underflowed
  double raw_envelope = 0.0;   // max of log|f|/r over the last quarter of windows
  bool stable = true;          // tail envelopes agree; see indicator_estimate
};

struct EnvelopeOptions {
  int points_per_window = 48;
  // Tail envelopes whose fitted rates disagree by more than this are
  // reported as not stabilized.
  double stability_tol = 0.02;
};

// limsup_{r->inf} log|f(r e^{i theta})| / r from windowed upper envelopes on
// geometric windows of [r_min, r_max].
IndicatorSample indicator_estimate(const FunctionExpr& f, double theta, double r_min,
                                   double r_max, int windows,
                                   const EnvelopeOptions& opts = {});

// limsup log M_f(r) / r by the same envelope procedure.
double type_estimate(const FunctionExpr& f, double r_max, int windows = 24);

}  // namespace fhc

#endif  // FHC_EXPFUN_HPP
