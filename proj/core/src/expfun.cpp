#include "fhc/expfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "fhc/error.hpp"

namespace fhc {

namespace {

constexpr double kMaxExponent = 709.0;
constexpr double kSeriesRadius = 0.5;
constexpr int kSeriesTerms = 30;

bool same_freq(ComplexPoint a, ComplexPoint b) {
  return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a) + std::abs(b));
}

void trim(std::vector<ComplexPoint>& poly) {
  while (!poly.empty() && poly.back() == ComplexPoint{}) poly.pop_back();
}

// exp(e) with an explicit range check on the real part.
ComplexPoint checked_exp(ComplexPoint e) {
  if (e.real() > kMaxExponent) throw RangeError("exponent out of double range");
  return std::exp(e);
}

// g_m = (2^{m+2} - 2) / (m+2)!, the coefficients of (e^w - 1)^2 / w^2.
std::vector<double> kernel_series(std::size_t count) {
  std::vector<double> g(count);
  double pow_term = 4.0 / 2.0;  // 2^{m+2} / (m+2)! at m = 0
  double two_term = 2.0 / 2.0;  // 2 / (m+2)!
  for (std::size_t m = 0; m < count; ++m) {
    if (m > 0) {
      pow_term *= 2.0 / static_cast<double>(m + 2);
      two_term /= static_cast<double>(m + 2);
    }
    g[m] = pow_term - two_term;
  }
  return g;
}

const std::array<double, kSeriesTerms>& kernel_table() {
  static const auto table = [] {
    std::array<double, kSeriesTerms> t{};
    const auto g = kernel_series(kSeriesTerms);
    std::copy(g.begin(), g.end(), t.begin());
    return t;
  }();
  return table;
}

struct KernelValue {
  ComplexPoint g;
  ComplexPoint dg;
};

KernelValue kernel_series_eval(ComplexPoint w) {
  const auto& g = kernel_table();
  ComplexPoint v = g[kSeriesTerms - 1];
  ComplexPoint d = static_cast<double>(kSeriesTerms - 1) * g[kSeriesTerms - 1];
  for (int m = kSeriesTerms - 2; m >= 0; --m) {
    v = v * w + g[m];
    if (m >= 1) d = d * w + static_cast<double>(m) * g[m];
  }
  return {v, d};
}

ComplexPoint poly_eval(const std::vector<ComplexPoint>& p, ComplexPoint z) {
  ComplexPoint v{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
  return v;
}

ComplexPoint poly_deriv_eval(const std::vector<ComplexPoint>& p, ComplexPoint z) {
  ComplexPoint v{};
  for (std::size_t j = p.size(); j-- > 1;) v = v * z + static_cast<double>(j) * p[j];
  return v;
}

// Block value (and derivative) times e^{-sigma}.
ValueAndDerivative block_scaled(const WeightedBlock& wb, ComplexPoint z, double sigma,
                                bool want_derivative) {
  const auto& b = wb.block;
  const ComplexPoint w = z - b.shift;
  const ComplexPoint u = b.alpha * w;
  const ComplexPoint beta = b.modulation;
  ValueAndDerivative out{};
  if (std::abs(u) < kSeriesRadius) {
    const ComplexPoint mod = checked_exp(beta * z - sigma);
    const auto k = kernel_series_eval(u);
    const ComplexPoint a2 = b.alpha * b.alpha;
    out.value = wb.coef * a2 * k.g * mod;
    if (want_derivative) out.derivative = wb.coef * mod * (a2 * b.alpha * k.dg + beta * a2 * k.g);
    return out;
  }
  // (e^u - 1)^2 = e^{2u} (1 - e^{-u})^2 keeps the growth in one exponential.
  ComplexPoint factor, a, eu_over;
  if (u.real() > 0.0) {
    factor = checked_exp(2.0 * u + beta * z - sigma);
    a = 1.0 - std::exp(-u);
    eu_over = 1.0;  // e^u (e^u - 1) = e^{2u} (1 - e^{-u})
  } else {
    factor = checked_exp(beta * z - sigma);
    const ComplexPoint eu = std::exp(u);
    a = eu - 1.0;
    eu_over = eu;
  }
  const ComplexPoint w2 = w * w;
  out.value = wb.coef * factor * a * a / w2;
  if (want_derivative) {
    out.derivative = wb.coef * factor *
                     (2.0 * b.alpha * eu_over * a / w2 - 2.0 * a * a / (w2 * w) + beta * a * a / w2);
  }
  return out;
}

ValueAndDerivative evaluate_impl(const FunctionExpr& f, ComplexPoint z, double sigma,
                                 bool want_derivative) {
  ValueAndDerivative acc{};
  for (const auto& wb : f.blocks) {
    if (wb.coef == ComplexPoint{}) continue;
    const auto v = block_scaled(wb, z, sigma, want_derivative);
    acc.value += v.value;
    acc.derivative += v.derivative;
  }
  for (const auto& t : f.exppoly.terms()) {
    const ComplexPoint e = checked_exp(t.freq * z - sigma);
    const ComplexPoint p = poly_eval(t.poly, z);
    acc.value += p * e;
    if (want_derivative) acc.derivative += (poly_deriv_eval(t.poly, z) + t.freq * p) * e;
  }
  return acc;
}

std::vector<ComplexPoint> exp_series(ComplexPoint a, std::size_t count) {
  std::vector<ComplexPoint> c(count);
  if (count == 0) return c;
  c[0] = 1.0;
  for (std::size_t n = 1; n < count; ++n) c[n] = c[n - 1] * a / static_cast<double>(n);
  return c;
}

std::vector<ComplexPoint> cauchy(const std::vector<ComplexPoint>& a,
                                 const std::vector<ComplexPoint>& b, std::size_t count) {
  std::vector<ComplexPoint> c(count);
  for (std::size_t n = 0; n < count; ++n) {
    ComplexPoint s{};
    for (std::size_t j = 0; j <= n && j < a.size(); ++j) {
      if (n - j < b.size()) s += a[j] * b[n - j];
    }
    c[n] = s;
  }
  return c;
}

// Taylor coefficients at 0 of alpha^2 G(alpha (z - s)), G the block kernel.
std::vector<ComplexPoint> shifted_kernel_series(ComplexPoint alpha, double s, std::size_t count) {
  const ComplexPoint as = alpha * s;
  if (s == 0.0 || std::abs(as) <= 4.0) {
    constexpr std::size_t kExtra = 90;
    const auto g = kernel_series(count + kExtra);
    std::vector<ComplexPoint> c(count);
    ComplexPoint alpha_pow = alpha * alpha;
    for (std::size_t n = 0; n < count; ++n) {
      ComplexPoint sum{};
      if (s == 0.0) {
        sum = g[n];
      } else {
        // sum_{m>=n} g_m C(m,n) (-alpha s)^{m-n}
        ComplexPoint term_pow = 1.0;
        double binom = 1.0;
        for (std::size_t m = n; m < n + kExtra; ++m) {
          sum += g[m] * binom * term_pow;
          term_pow *= -as;
          binom *= static_cast<double>(m + 1) / static_cast<double>(m + 1 - n);
        }
      }
      c[n] = alpha_pow * sum;
      alpha_pow *= alpha;
    }
    return c;
  }
  // Far shifts: numerator e^{-2as} e^{2az} - 2 e^{-as} e^{az} + 1 times 1/(z-s)^2.
  std::vector<ComplexPoint> num(count);
  const auto e2 = exp_series(2.0 * alpha, count);
  const auto e1 = exp_series(alpha, count);
  const ComplexPoint m2 = checked_exp(-2.0 * as);
  const ComplexPoint m1 = checked_exp(-as);
  for (std::size_t n = 0; n < count; ++n) num[n] = m2 * e2[n] - 2.0 * m1 * e1[n];
  num[0] += 1.0;
  std::vector<ComplexPoint> den(count);
  double inv_pow = 1.0 / (s * s);
  for (std::size_t n = 0; n < count; ++n) {
    den[n] = static_cast<double>(n + 1) * inv_pow;
    inv_pow /= s;
  }
  return cauchy(num, den, count);
}

}  // namespace

// ---------------------------------------------------------------------------

ExpPolyFunction::ExpPolyFunction(std::vector<ExpPolyTerm> terms) {
  for (auto& t : terms) add(std::move(t));
}

void ExpPolyFunction::add(ExpPolyTerm term) {
  trim(term.poly);
  if (term.poly.empty()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (!same_freq(it->freq, term.freq)) continue;
    if (it->poly.size() < term.poly.size()) it->poly.resize(term.poly.size());
    for (std::size_t j = 0; j < term.poly.size(); ++j) it->poly[j] += term.poly[j];
    trim(it->poly);
    if (it->poly.empty()) terms_.erase(it);
    return;
  }
  terms_.push_back(std::move(term));
}

ExpPolyFunction& ExpPolyFunction::operator+=(const ExpPolyFunction& other) {
  for (const auto& t : other.terms_) add(t);
  return *this;
}

ExpPolyFunction& ExpPolyFunction::operator*=(ComplexPoint c) {
  if (c == ComplexPoint{}) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_)
    for (auto& p : t.poly) p *= c;
  return *this;
}

FunctionExpr FunctionExpr::constant(ComplexPoint c) { return exponential(0.0, c); }

FunctionExpr FunctionExpr::exponential(ComplexPoint alpha, ComplexPoint coef) {
  FunctionExpr f;
  f.exppoly.add({{coef}, alpha});
  return f;
}

FunctionExpr FunctionExpr::monomial(int degree, ComplexPoint alpha, ComplexPoint coef) {
  if (degree < 0) throw InputError("monomial: negative degree");
  FunctionExpr f;
  std::vector<ComplexPoint> p(static_cast<std::size_t>(degree) + 1);
  p.back() = coef;
  f.exppoly.add({std::move(p), alpha});
  return f;
}

FunctionExpr FunctionExpr::block(ComplexPoint alpha, ComplexPoint coef) {
  FunctionExpr f;
  f.blocks.push_back({coef, {alpha, 0.0, 0.0}});
  return f;
}

FunctionExpr FunctionExpr::sine_pi() {
  const ComplexPoint half_over_i{0.0, -0.5};
  return exponential({0.0, kPi}, half_over_i) + exponential({0.0, -kPi}, -half_over_i);
}

std::size_t FunctionExpr::term_count() const noexcept {
  return blocks.size() + exppoly.terms().size();
}

FunctionExpr& FunctionExpr::operator+=(const FunctionExpr& other) {
  blocks.insert(blocks.end(), other.blocks.begin(), other.blocks.end());
  exppoly += other.exppoly;
  return *this;
}

FunctionExpr& FunctionExpr::operator*=(ComplexPoint c) {
  for (auto& b : blocks) b.coef *= c;
  exppoly *= c;
  return *this;
}

FunctionExpr operator+(FunctionExpr a, const FunctionExpr& b) { return a += b; }
FunctionExpr operator*(ComplexPoint c, FunctionExpr f) { return f *= c; }

std::vector<ExpAtom> expand_atoms(const FunctionExpr& f) {
  std::vector<ExpAtom> atoms;
  for (const auto& wb : f.blocks) {
    const auto& b = wb.block;
    if (wb.coef == ComplexPoint{} || b.alpha == ComplexPoint{}) continue;
    const double c = std::abs(wb.coef);
    const ComplexPoint a = b.alpha;
    const ComplexPoint beta = b.modulation;
    atoms.push_back({beta + 2.0 * a, -2.0 * a * b.shift, c, {}, b.shift, true});
    atoms.push_back({beta + a, -a * b.shift, 2.0 * c, {}, b.shift, true});
    atoms.push_back({beta, 0.0, c, {}, b.shift, true});
  }
  for (const auto& t : f.exppoly.terms()) {
    ExpAtom at;
    at.freq = t.freq;
    for (const auto& p : t.poly) at.poly_moduli.push_back(std::abs(p));
    atoms.push_back(std::move(at));
  }
  return atoms;
}

// ---------------------------------------------------------------------------

ComplexPoint block_kernel(ComplexPoint w) {
  if (std::abs(w) < kSeriesRadius) return kernel_series_eval(w).g;
  const ComplexPoint a = std::exp(w) - 1.0;
  return a * a / (w * w);
}

ComplexPoint evaluate(const FunctionExpr& f, ComplexPoint z) {
  const auto v = evaluate_impl(f, z, 0.0, false).value;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw RangeError("evaluate: result not representable");
  return v;
}

std::vector<ComplexPoint> evaluate_many(const FunctionExpr& f, const std::vector<ComplexPoint>& zs) {
  std::vector<ComplexPoint> out(zs.size());
  double xmax = 0.0, ymax = 0.0;
  for (const auto& z : zs) {
    xmax = std::max(xmax, std::abs(z.real()));
    ymax = std::max(ymax, std::abs(z.imag()));
  }
  auto reach = [&](ComplexPoint a) { return std::abs(a.real()) * xmax + std::abs(a.imag()) * ymax; };

  // e^{alpha z} and e^{beta z} tables, one per distinct alpha / beta.
  struct Table {
    ComplexPoint key;
    std::vector<ComplexPoint> values;
  };
  std::vector<Table> tables;
  constexpr std::size_t kMaxTables = 16;
  tables.reserve(kMaxTables);
  auto table_for = [&](ComplexPoint key) -> const std::vector<ComplexPoint>* {
    for (const auto& t : tables)
      if (t.key == key) return &t.values;
    if (tables.size() >= kMaxTables) return nullptr;
    Table t{key, std::vector<ComplexPoint>(zs.size())};
    for (std::size_t i = 0; i < zs.size(); ++i) t.values[i] = std::exp(key * zs[i]);
    tables.push_back(std::move(t));
    return &tables.back().values;
  };

  FunctionExpr rest;
  rest.exppoly = f.exppoly;
  for (const auto& wb : f.blocks) {
    if (wb.coef == ComplexPoint{}) continue;
    const auto& b = wb.block;
    // Product form e^{alpha z} e^{-alpha s} stays in range only for moderate exponents.
    const bool in_range = reach(b.alpha) + std::abs(b.alpha.real() * b.shift) < 600.0 &&
                          reach(b.modulation) < 600.0;
    const auto* ea = in_range ? table_for(b.alpha) : nullptr;
    const auto* eb = ea ? table_for(b.modulation) : nullptr;
    if (!ea || !eb) {
      rest.blocks.push_back(wb);
      continue;
    }
    const ComplexPoint es = std::exp(-b.alpha * b.shift);
    const ComplexPoint a2 = b.alpha * b.alpha;
    // Plain arithmetic in the hot loop; std::complex operators carry inf/nan
    // recovery branches that dominate the cost here.
    auto mul = [](ComplexPoint x, ComplexPoint y) {
      return ComplexPoint{x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
    };
    const ComplexPoint c0 = wb.coef;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const ComplexPoint w = zs[i] - b.shift;
      const ComplexPoint u = mul(b.alpha, w);
      if (std::norm(u) < kSeriesRadius * kSeriesRadius) {
        out[i] += c0 * a2 * kernel_series_eval(u).g * (*eb)[i];
      } else {
        const ComplexPoint a = mul((*ea)[i], es) - 1.0;
        const ComplexPoint w2 = mul(w, w);
        const double n2 = std::norm(w2);
        const ComplexPoint inv{w2.real() / n2, -w2.imag() / n2};
        out[i] += mul(mul(c0, (*eb)[i]), mul(mul(a, a), inv));
      }
    }
  }
  if (rest.term_count() > 0)
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] += evaluate_impl(rest, zs[i], 0.0, false).value;
  for (const auto& v : out)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw RangeError("evaluate_many: result not representable");
  return out;
}

ComplexPoint evaluate_scaled(const FunctionExpr& f, ComplexPoint z, double log_scale) {
  return evaluate_impl(f, z, log_scale, false).value;
}

ValueAndDerivative evaluate_with_derivative_scaled(const FunctionExpr& f, ComplexPoint z,
                                                   double log_scale) {
  return evaluate_impl(f, z, log_scale, true);
}

double dominant_exponent(const FunctionExpr& f, ComplexPoint z) {
  double sigma = -HUGE_VAL;
  for (const auto& wb : f.blocks) {
    const auto& b = wb.block;
    const ComplexPoint u = b.alpha * (z - b.shift);
    const double base = (b.modulation * z).real();
    sigma = std::max(sigma, base + std::max(0.0, 2.0 * u.real()));
  }
  for (const auto& t : f.exppoly.terms()) sigma = std::max(sigma, (t.freq * z).real());
  return std::isfinite(sigma) ? sigma : 0.0;
}

double log_abs(const FunctionExpr& f, ComplexPoint z) {
  const double sigma = dominant_exponent(f, z);
  const double m = std::abs(evaluate_scaled(f, z, sigma));
  if (m == 0.0) return -HUGE_VAL;
  return std::log(m) + sigma;
}

// ---------------------------------------------------------------------------

FunctionExpr translate(const FunctionExpr& f, double k) {
  FunctionExpr out;
  out.blocks.reserve(f.blocks.size());
  for (auto wb : f.blocks) {
    wb.coef *= checked_exp(wb.block.modulation * k);
    wb.block.shift -= k;
    out.blocks.push_back(wb);
  }
  for (const auto& t : f.exppoly.terms()) {
    const std::size_t deg = t.poly.size();
    std::vector<ComplexPoint> shifted(deg);
    // P(z + k) = sum_j z^j sum_{i>=j} p_i C(i, j) k^{i-j}
    for (std::size_t j = 0; j < deg; ++j) {
      ComplexPoint s{};
      double binom = 1.0;
      double kp = 1.0;
      for (std::size_t i = j; i < deg; ++i) {
        s += t.poly[i] * (binom * kp);
        binom *= static_cast<double>(i + 1) / static_cast<double>(i + 1 - j);
        kp *= k;
      }
      shifted[j] = s;
    }
    const ComplexPoint mult = checked_exp(t.freq * k);
    for (auto& c : shifted) c *= mult;
    out.exppoly.add({std::move(shifted), t.freq});
  }
  return out;
}

FunctionExpr modulate(const FunctionExpr& f, ComplexPoint beta) {
  FunctionExpr out;
  out.blocks = f.blocks;
  for (auto& wb : out.blocks) wb.block.modulation += beta;
  for (auto t : f.exppoly.terms()) {
    t.freq += beta;
    out.exppoly.add(std::move(t));
  }
  return out;
}

std::vector<ComplexPoint> taylor_coefficients(const FunctionExpr& f, std::size_t count) {
  if (count == 0) throw InputError("taylor_coefficients: count must be positive");
  std::vector<ComplexPoint> total(count);
  for (const auto& wb : f.blocks) {
    if (wb.coef == ComplexPoint{}) continue;
    const auto& b = wb.block;
    const auto kernel = shifted_kernel_series(b.alpha, b.shift, count);
    const auto mod = exp_series(b.modulation, count);
    const auto c = cauchy(kernel, mod, count);
    for (std::size_t n = 0; n < count; ++n) total[n] += wb.coef * c[n];
  }
  for (const auto& t : f.exppoly.terms()) {
    const auto c = cauchy(t.poly, exp_series(t.freq, count), count);
    for (std::size_t n = 0; n < count; ++n) total[n] += c[n];
  }
  return total;
}

namespace {

std::vector<ComplexPoint> surviving_frequencies(const FunctionExpr& f) {
  std::vector<ComplexPoint> freqs;
  for (const auto& t : f.exppoly.terms()) freqs.push_back(t.freq);

  // Blocks sharing a shift can cancel frequency by frequency; the rational
  // prefactors 1/(z - s)^2 for distinct s cannot cancel each other.
  struct Acc {
    ComplexPoint freq;
    ComplexPoint sum;
    double scale;
  };
  std::map<double, std::vector<Acc>> groups;
  for (const auto& wb : f.blocks) {
    if (wb.coef == ComplexPoint{}) continue;
    const auto& b = wb.block;
    const ComplexPoint a = b.alpha;
    const std::array<std::pair<ComplexPoint, ComplexPoint>, 3> parts = {{
        {b.modulation + 2.0 * a, wb.coef * std::exp(-2.0 * a * b.shift)},
        {b.modulation + a, -2.0 * wb.coef * std::exp(-a * b.shift)},
        {b.modulation, wb.coef},
    }};
    auto& accs = groups[b.shift];
    for (const auto& [freq, c] : parts) {
      auto it = std::find_if(accs.begin(), accs.end(),
                             [&](const Acc& x) { return same_freq(x.freq, freq); });
      if (it == accs.end()) {
        accs.push_back({freq, c, std::abs(c)});
      } else {
        it->sum += c;
        it->scale = std::max(it->scale, std::abs(c));
      }
    }
  }
  for (const auto& [shift, accs] : groups) {
    for (const auto& a : accs) {
      if (!(std::abs(a.sum) <= 1e-13 * a.scale)) freqs.push_back(a.freq);
    }
  }
  return freqs;
}

}  // namespace

bool is_zero_function(const FunctionExpr& f) { return surviving_frequencies(f).empty(); }

ConvexCompact frequency_hull(const FunctionExpr& f) {
  const auto freqs = surviving_frequencies(f);
  if (freqs.empty()) throw InputError("frequency_hull: identically zero function");
  return ConvexCompact::hull(freqs);
}

double exponential_type(const FunctionExpr& f) {
  const auto freqs = surviving_frequencies(f);
  if (freqs.empty()) return 0.0;
  return ConvexCompact::hull(freqs).max_modulus();
}

// ---------------------------------------------------------------------------

double log_max_modulus(const FunctionExpr& f, double r, int samples) {
  if (samples < 8) throw InputError("max_modulus: need at least 8 samples");
  if (!(r > 0.0)) throw InputError("max_modulus: radius must be positive");
  const double step = 2.0 * kPi / samples;
  auto g = [&](double th) { return log_abs(f, std::polar(r, th)); };
  double best = -HUGE_VAL, best_th = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double th = j * step;
    const double v = g(th);
    if (v > best) {
      best = v;
      best_th = th;
    }
  }
  if (!std::isfinite(best)) return best;
  // Golden-section maximisation on the bracket around the best sample.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = best_th - step, b = best_th + step;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 60 && (b - a) > 1e-13; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  return std::max({best, gc, gd});
}

double max_modulus(const FunctionExpr& f, double r, int samples) {
  const double lm = log_max_modulus(f, r, samples);
  if (lm > kMaxExponent) throw RangeError("max_modulus: value out of double range");
  return std::exp(lm);
}

namespace {

struct EnvelopePoint {
  double r;
  double value;  // max log|f| in the window
};

// Least squares for value = h r + m log r + c; returns h (and m through out).
bool fit_rate(const std::vector<EnvelopePoint>& pts, double& h, double& m, bool with_log) {
  const int p = with_log ? 3 : 2;
  if (static_cast<int>(pts.size()) < p) return false;
  double A[3][3] = {}, rhs[3] = {};
  for (const auto& e : pts) {
    const double basis[3] = {e.r, 1.0, std::log(e.r)};
    for (int i = 0; i < p; ++i) {
      rhs[i] += basis[i] * e.value;
      for (int j = 0; j < p; ++j) A[i][j] += basis[i] * basis[j];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < p; ++col) {
    int piv = col;
    for (int r = col + 1; r < p; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (A[piv][col] == 0.0) return false;
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < p; ++r) {
      const double fct = A[r][col] / A[col][col];
      for (int c = col; c < p; ++c) A[r][c] -= fct * A[col][c];
      rhs[r] -= fct * rhs[col];
    }
  }
  double x[3] = {};
  for (int i = p - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < p; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  h = x[0];
  m = with_log ? x[2] : 0.0;
  return std::isfinite(h);
}

struct RateEstimate {
  double value;
  double raw;
  bool stable;
};

// Shared limsup estimator: fit the window envelopes of the tail (last half of
// the windows) to h r + m log r + c. Polynomial prefactors make the plain
// tail maximum of log|f|/r converge only like log(r)/r; the fit removes that.
// Stability compares with a two-parameter fit on the last third, m fixed.
RateEstimate envelope_rate(const std::vector<EnvelopePoint>& env, double stability_tol) {
  const std::size_t n = env.size();
  RateEstimate est{-HUGE_VAL, -HUGE_VAL, true};
  const std::size_t quarter = std::max<std::size_t>(1, n / 4);
  for (std::size_t j = n - quarter; j < n; ++j) {
    if (std::isfinite(env[j].value)) est.raw = std::max(est.raw, env[j].value / env[j].r);
  }
  std::vector<EnvelopePoint> tail;
  for (std::size_t j = n / 2; j < n; ++j)
    if (std::isfinite(env[j].value)) tail.push_back(env[j]);
  if (tail.empty()) {
    est.stable = false;
    return est;
  }
  double h = 0.0, m = 0.0;
  if (!fit_rate(tail, h, m, true)) {
    est.value = est.raw;
    est.stable = false;
    return est;
  }
  est.value = h;
  std::vector<EnvelopePoint> late;
  const std::size_t third = std::max<std::size_t>(2, n / 3);
  for (std::size_t j = n - std::min(n, third); j < n; ++j) {
    if (std::isfinite(env[j].value))
      late.push_back({env[j].r, env[j].value - m * std::log(env[j].r)});
  }
  double h_late = 0.0, unused = 0.0;
  if (fit_rate(late, h_late, unused, false)) {
    est.stable = std::abs(h_late - h) <= stability_tol;
  } else {
    est.stable = false;
  }
  return est;
}

std::vector<double> geometric_edges(double r_min, double r_max, int windows) {
  std::vector<double> edges(static_cast<std::size_t>(windows) + 1);
  const double ratio = std::log(r_max / r_min) / windows;
  for (int j = 0; j <= windows; ++j) edges[j] = r_min * std::exp(ratio * j);
  edges.back() = r_max;
  return edges;
}

}  // namespace

IndicatorSample indicator_estimate(const FunctionExpr& f, double theta, double r_min,
                                   double r_max, int windows, const EnvelopeOptions& opts) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw InputError("indicator_estimate: need 0 < r_min < r_max");
  if (windows < 4) throw InputError("indicator_estimate: need at least 4 windows");
  const ComplexPoint dir = std::polar(1.0, theta);
  const auto edges = geometric_edges(r_min, r_max, windows);
  const int pts = std::max(4, opts.points_per_window);
  std::vector<EnvelopePoint> env;
  env.reserve(static_cast<std::size_t>(windows));
  for (int j = 0; j < windows; ++j) {
    EnvelopePoint best{edges[j + 1], -HUGE_VAL};
    for (int i = 0; i <= pts; ++i) {
      const double r = edges[j] + (edges[j + 1] - edges[j]) * i / pts;
      const double v = log_abs(f, r * dir);
      if (v > best.value) best = {r, v};
    }
    env.push_back(best);
  }
  const auto est = envelope_rate(env, opts.stability_tol);
  return {theta, est.value, est.raw, est.stable};
}

double type_estimate(const FunctionExpr& f, double r_max, int windows) {
  if (!(r_max >= 10.0)) throw InputError("type_estimate: r_max must be at least 10");
  if (windows < 4) throw InputError("type_estimate: need at least 4 windows");
  const auto edges = geometric_edges(1.0, r_max, windows);
  std::vector<EnvelopePoint> env;
  for (int j = 0; j < windows; ++j) {
    // log M_f is nondecreasing in r, so the window maximum sits at its right end.
    const double r = edges[j + 1];
    env.push_back({r, log_max_modulus(f, r, 256)});
  }
  return envelope_rate(env, 1.0).value;
}

}  // namespace fhc
