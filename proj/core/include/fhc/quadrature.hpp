#ifndef FHC_QUADRATURE_HPP
#define FHC_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace fhc {

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

// Globally adaptive 10/21-point Gauss-Kronrod on [a, b]: the interval with
// the largest error estimate is bisected until the total error meets the
// tolerance. Integrable endpoint and interior log singularities converge by
// bisection; the integrand must not return non-finite values.
QuadratureResult integrate_gk21(const std::function<std::complex<double>(double)>& f, double a,
                                double b, const QuadratureOptions& opts = {});

// Real-valued convenience wrapper.
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const QuadratureOptions& opts = {}, bool* converged = nullptr);

}  // namespace fhc

#endif  // FHC_QUADRATURE_HPP
