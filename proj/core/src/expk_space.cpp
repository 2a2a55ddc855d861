#include "fhc/expk_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "fhc/error.hpp"

namespace fhc {

namespace {

// log of |f(z)| e^{-H_K(z) - |z|/n}, overflow-free.
double weighted_log(const FunctionExpr& f, const ExpKNorm& norm, ComplexPoint z) {
  const double weight_exp = norm.K.support(z) + std::abs(z) / norm.n;
  const double sigma = std::max(weight_exp, dominant_exponent(f, z));
  const double m = std::abs(evaluate_scaled(f, z, sigma));
  if (m == 0.0) return -HUGE_VAL;
  return std::log(m) + (sigma - weight_exp);
}

struct Candidate {
  ComplexPoint z;
  double value;
  double spacing;
};

// Compass search on the weighted log modulus, starting from a grid point.
Candidate refine(const FunctionExpr& f, const ExpKNorm& norm, Candidate c) {
  double step = 0.5 * c.spacing;
  const double floor = 1e-9 * (1.0 + std::abs(c.z));
  static const ComplexPoint dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                       {0.7071067811865476, 0.7071067811865476},
                                       {-0.7071067811865476, 0.7071067811865476},
                                       {0.7071067811865476, -0.7071067811865476},
                                       {-0.7071067811865476, -0.7071067811865476}};
  for (int it = 0; it < 400 && step > floor; ++it) {
    bool moved = false;
    for (const auto& d : dirs) {
      const ComplexPoint z = c.z + step * d;
      const double v = weighted_log(f, norm, z);
      if (v > c.value) {
        c.z = z;
        c.value = v;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return c;
}

double poly_bound(const std::vector<double>& moduli, double r) {
  double v = 0.0;
  for (std::size_t j = moduli.size(); j-- > 0;) v = v * r + moduli[j];
  return v;
}

}  // namespace

std::vector<ComplexPoint> sampling_points(double r_max, const SamplingSpec& grid) {
  std::vector<ComplexPoint> pts;
  pts.emplace_back(0.0, 0.0);
  const double r_lo = std::min(grid.r_min, r_max);
  const int nr = std::max(1, grid.radii);
  for (int i = 0; i < nr; ++i) {
    const double r = nr == 1 ? r_max : r_lo * std::pow(r_max / r_lo, static_cast<double>(i) / (nr - 1));
    for (int j = 0; j < grid.angles; ++j) pts.push_back(std::polar(r, -kPi + 2.0 * kPi * j / grid.angles));
  }
  if (grid.real_axis_step > 0.0) {
    const double ext = std::min(r_max, grid.real_axis_extent);
    const int m = static_cast<int>(std::ceil(ext / grid.real_axis_step));
    for (int j = -m; j <= m; ++j) pts.emplace_back(j * grid.real_axis_step, 0.0);
  }
  return pts;
}

NormEstimate norm_estimate(const FunctionExpr& f, const ExpKNorm& norm, double r_max,
                           const SamplingSpec& grid) {
  if (norm.n < 1) throw InputError("norm_estimate: n must be at least 1");
  if (!(r_max >= 10.0)) throw InputError("norm_estimate: r_max must be at least 10");
  NormEstimate out;

  // Direction-wise exponent gaps decide boundedness and the tail certificate.
  const auto atoms = expand_atoms(f);
  const int ndir = std::max(8, grid.tail_directions);
  const double inv_n = 1.0 / norm.n;
  out.min_gap = HUGE_VAL;
  double tail = 0.0;
  for (const auto& atom : atoms) {
    double atom_gap = HUGE_VAL, atom_theta = 0.0;
    for (int j = 0; j < ndir; ++j) {
      const double th = -kPi + 2.0 * kPi * j / ndir;
      const ComplexPoint d = std::polar(1.0, th);
      const double gap = norm.K.support(d) - (atom.freq * d).real() + inv_n;
      if (gap < atom_gap) {
        atom_gap = gap;
        atom_theta = th;
      }
    }
    if (atom_gap < out.min_gap) {
      out.min_gap = atom_gap;
      out.witness_theta = atom_theta;
    }
    const bool polynomial_growth = !atom.is_block && atom.poly_moduli.size() > 1;
    if (atom_gap < -1e-12 || (polynomial_growth && atom_gap <= 1e-12)) {
      out.bounded = false;
      out.witness_theta = atom_theta;
    }
    // Lipschitz slack between sampled directions.
    const double g = atom_gap - (norm.K.max_modulus() + std::abs(atom.freq)) * kPi / ndir;
    const double scale = std::exp(atom.offset.real());
    if (g <= 0.0) {
      tail = HUGE_VAL;
    } else if (atom.is_block) {
      const double dist = r_max - std::abs(atom.pole);
      tail += dist > 1.0 ? atom.coef_modulus * scale * std::exp(-g * r_max) / (dist * dist) : HUGE_VAL;
    } else {
      const double deg = static_cast<double>(atom.poly_moduli.size() - 1);
      double worst = poly_bound(atom.poly_moduli, r_max) * std::exp(-g * r_max);
      if (g * r_max < deg) {
        const double r_hi = 4.0 * deg / g;
        for (int j = 0; j <= 200; ++j) {
          const double r = r_max + (r_hi - r_max) * j / 200.0;
          worst = std::max(worst, poly_bound(atom.poly_moduli, r) * std::exp(-g * r));
        }
      }
      tail += worst;
    }
  }
  if (atoms.empty()) out.min_gap = inv_n;
  if (!out.bounded) {
    out.value = HUGE_VAL;
    out.tail_bound = HUGE_VAL;
    return out;
  }
  out.tail_bound = tail;
  out.tail_certified = tail < 1e-12;

  const auto pts = sampling_points(r_max, grid);
  const double ring_ratio = std::pow(r_max / std::min(grid.r_min, r_max), 1.0 / std::max(1, grid.radii - 1));
  std::vector<Candidate> cands;
  cands.reserve(pts.size());
  for (const auto& z : pts) {
    const double v = weighted_log(f, norm, z);
    const double rho = std::abs(z);
    double spacing = z.imag() == 0.0 ? grid.real_axis_step
                                     : std::max(rho * 2.0 * kPi / grid.angles, rho * (ring_ratio - 1.0));
    if (spacing <= 0.0) spacing = grid.r_min;
    cands.push_back({z, v, spacing});
  }
  const std::size_t keep = std::min<std::size_t>(cands.size(), std::max(1, grid.refine_candidates));
  std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(),
                    [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  Candidate best = cands.front();
  for (std::size_t i = 0; i < keep; ++i) {
    if (!std::isfinite(cands[i].value)) continue;
    const auto r = refine(f, norm, cands[i]);
    if (r.value > best.value) best = r;
  }
  out.value = std::isfinite(best.value) ? std::exp(best.value) : 0.0;
  out.argmax = best.z;
  return out;
}

Membership membership(const FunctionExpr& f, const ConvexCompact& K) {
  Membership m;
  if (is_zero_function(f)) return m;
  m.hull = frequency_hull(f);
  const auto c = contains(K, m.hull);
  m.member = c.inside;
  m.witness_theta = c.witness_theta;
  return m;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit fit;
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return fit;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    fit.rss += e * e;
  }
  return fit;
}

// Vertices of the upper concave hull of (x_i, y_i), x increasing.
std::vector<std::size_t> upper_hull(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (h.size() >= 2) {
      const auto a = h[h.size() - 2], b = h.back();
      const double cr = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
      if (cr >= 0.0) h.pop_back();
      else break;
    }
    h.push_back(i);
  }
  return h;
}

}  // namespace

SeriesReport criterion_series_check(const FunctionExpr& f, const ExpKNorm& norm, int k_max,
                                    const SeriesOptions& opts) {
  if (k_max < 20) throw InputError("criterion_series_check: k_max must be at least 20");
  SeriesReport rep;
  double sum = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const auto est = norm_estimate(translate(f, static_cast<double>(k)), norm, opts.r_max, opts.grid);
    if (!est.bounded) {
      rep.bounded = false;
      rep.converges = false;
      return rep;
    }
    rep.a.push_back(est.value);
    sum += est.value;
    rep.partial_sums.push_back(sum);
  }
  const int k0 = std::max(1, static_cast<int>(std::ceil((1.0 - opts.tail_fraction) * k_max)));
  std::vector<double> lk, la, kk;
  for (int k = k0; k <= k_max; ++k) {
    const double a = rep.a[static_cast<std::size_t>(k - 1)];
    if (!(a > 0.0)) continue;
    lk.push_back(std::log(static_cast<double>(k)));
    la.push_back(std::log(a));
    kk.push_back(static_cast<double>(k));
  }
  const auto power = least_squares(lk, la);
  rep.decay_exponent_raw = -power.slope;
  const auto hull_idx = upper_hull(lk, la);
  if (hull_idx.size() >= 2) {
    std::vector<double> hx, hy;
    for (auto i : hull_idx) {
      hx.push_back(lk[i]);
      hy.push_back(la[i]);
    }
    rep.decay_exponent = -least_squares(hx, hy).slope;
  } else {
    rep.decay_exponent = rep.decay_exponent_raw;
  }
  const auto expo = least_squares(kk, la);
  rep.exp_rate = expo.slope;
  rep.exp_fit_better = expo.rss < power.rss;
  rep.converges = rep.decay_exponent > 1.5 || (rep.exp_fit_better && rep.exp_rate < 0.0);
  rep.cauchy_from = k0;
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (int k = k0; k <= k_max; ++k) {
    const double s = rep.partial_sums[static_cast<std::size_t>(k - 1)];
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  rep.cauchy_spread = hi - lo;
  return rep;
}

DensityFit density_fit(const FunctionExpr& target, const std::vector<ComplexPoint>& alphas,
                       const ExpKNorm& norm, double r_max, const SamplingSpec& grid) {
  if (alphas.empty()) throw InputError("density_fit: need at least one alpha");
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (std::size_t j = i + 1; j < alphas.size(); ++j)
      if (alphas[i] == alphas[j]) throw InputError("density_fit: alphas must be pairwise distinct");
  if (!membership(target, norm.K).member) throw InputError("density_fit: target not in Exp(K)");
  std::vector<FunctionExpr> blocks;
  for (const auto& a : alphas) {
    blocks.push_back(FunctionExpr::block(a));
    if (!membership(blocks.back(), norm.K).member)
      throw InputError("density_fit: building block outside Exp(K)");
  }

  using Scalar = std::complex<long double>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const auto pts = sampling_points(r_max, grid);
  const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(alphas.size());
  Mat A(rows, cols);
  Vec b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto z = pts[static_cast<std::size_t>(i)];
    const double w = norm.K.support(z) + std::abs(z) / norm.n;
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto v = evaluate_scaled(blocks[static_cast<std::size_t>(j)], z, w);
      A(i, j) = Scalar(v.real(), v.imag());
    }
    const auto t = evaluate_scaled(target, z, w);
    b(i) = Scalar(t.real(), t.imag());
  }
  DensityFit fit;
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  const long double smax = sv.size() ? sv(0) : 0.0L;
  const long double smin = sv.size() ? sv(sv.size() - 1) : 0.0L;
  fit.condition = smin > 0 ? static_cast<double>(smax / smin) : HUGE_VAL;
  const long double eps = std::numeric_limits<long double>::epsilon();
  fit.well_conditioned = smin > 0 && smax / smin < 1.0L / (64 * eps);

  // Rank-revealing QR; its threshold drops numerically dependent columns.
  Vec c = A.colPivHouseholderQr().solve(b);
  if (!c.allFinite()) {
    Mat normal = A.adjoint() * A;
    const Vec rhs = A.adjoint() * b;
    long double diag_max = 0;
    for (Eigen::Index j = 0; j < cols; ++j) diag_max = std::max(diag_max, std::abs(normal(j, j)));
    const long double ridge = 1e-12L * (diag_max > 0 ? diag_max : 1.0L);
    for (Eigen::Index j = 0; j < cols; ++j) normal(j, j) += ridge;
    c = normal.ldlt().solve(rhs);
  }
  if (!c.allFinite()) throw NumericError("density_fit: least-squares system could not be solved");

  const Vec r = A * c - b;
  long double sq = 0, mx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const long double m = std::abs(r(i));
    sq += m * m;
    mx = std::max(mx, m);
  }
  fit.residual_max = static_cast<double>(mx);
  fit.residual_l2 = static_cast<double>(std::sqrt(sq / rows));
  for (Eigen::Index j = 0; j < cols; ++j)
    fit.coefficients.emplace_back(static_cast<double>(c(j).real()), static_cast<double>(c(j).imag()));
  return fit;
}

}  // namespace fhc
