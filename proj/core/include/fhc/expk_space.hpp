#ifndef FHC_EXPK_SPACE_HPP
#define FHC_EXPK_SPACE_HPP

#include <vector>

#include "fhc/complex_geometry.hpp"
#include "fhc/expfun.hpp"

namespace fhc {

// ||f||_{K,n} = sup_z |f(z)| e^{-H_K(z) - |z|/n}
struct ExpKNorm {
  ConvexCompact K;
  int n = 1;
};

// Polar sampling grid for weighted sups and least-squares fits.
struct SamplingSpec {
  int radii = 48;              // geometric in [r_min, r_max]
  int angles = 96;
  double r_min = 1e-2;
  double real_axis_step = 0.05;  // densified real segment [-real_axis_extent, real_axis_extent]
  double real_axis_extent = 40.0;
  int refine_candidates = 6;   // local compass refinement of the best grid points
  int tail_directions = 720;
};

struct NormEstimate {
  double value = 0.0;           // grid sup (after refinement)
  ComplexPoint argmax{};
  bool bounded = true;          // false: some direction grows faster than the weight
  double witness_theta = 0.0;   // direction of the most negative exponent gap
  double min_gap = 0.0;         // min over directions of H_K - Re(w e^{i theta}) + 1/n
  double tail_bound = 0.0;      // bound on the weighted modulus beyond r_max
  bool tail_certified = false;  // tail_bound < 1e-12
};

NormEstimate norm_estimate(const FunctionExpr& f, const ExpKNorm& norm, double r_max,
                           const SamplingSpec& grid = {});

struct Membership {
  bool member = true;
  double witness_theta = 0.0;
  ConvexCompact hull = ConvexCompact::point(0.0);
};

// frequency_hull(f) subset of K; the zero function is a member of every Exp(K).
Membership membership(const FunctionExpr& f, const ConvexCompact& K);

struct SeriesReport {
  std::vector<double> a;             // a_k = ||T_1^k f||_{K,n}, k = 1..k_max
  std::vector<double> partial_sums;
  bool bounded = true;
  double decay_exponent = 0.0;       // p in a_k ~ C k^{-p}, fitted on the upper envelope of the tail
  double decay_exponent_raw = 0.0;   // plain log-log least squares over the tail
  double exp_rate = 0.0;             // slope of log a_k against k on the tail
  bool exp_fit_better = false;
  bool converges = false;
  // max |S_m - S_l| over l, m in [cauchy_from, k_max]
  double cauchy_spread = 0.0;
  int cauchy_from = 0;
};

struct SeriesOptions {
  double r_max = 60.0;
  SamplingSpec grid{};
  double tail_fraction = 0.5;        // fit on k in [(1 - tail_fraction) k_max, k_max]
};

SeriesReport criterion_series_check(const FunctionExpr& f, const ExpKNorm& norm, int k_max,
                                    const SeriesOptions& opts = {});

struct DensityFit {
  std::vector<ComplexPoint> coefficients;
  double residual_max = 0.0;   // weighted sup of |sum c_j f_alpha_j - target| on the grid
  double residual_l2 = 0.0;    // weighted root-mean-square over the grid
  double condition = 0.0;      // sigma_max / sigma_min of the weighted design matrix
  bool well_conditioned = true;  // condition below 1 / (64 eps) in long double
};

// Least squares for target ~ sum_j c_j f_{alpha_j} in the weighted grid norm,
// in long double by column-pivoted QR. Ridge-regularised normal equations
// (ridge 1e-12 relative to the largest diagonal entry) are the fallback when
// QR produces non-finite coefficients.
DensityFit density_fit(const FunctionExpr& target, const std::vector<ComplexPoint>& alphas,
                       const ExpKNorm& norm, double r_max, const SamplingSpec& grid = {});

// Grid points shared by norm_estimate and density_fit.
std::vector<ComplexPoint> sampling_points(double r_max, const SamplingSpec& grid);

}  // namespace fhc

#endif  // FHC_EXPK_SPACE_HPP
