#include "fhc/carleman.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "fhc/constructor.hpp"
#include "fhc/error.hpp"
#include "fhc/quadrature.hpp"

namespace fhc {

bool Box::contains(ComplexPoint z, double margin) const noexcept {
  return z.real() >= x0 - margin && z.real() <= x1 + margin && z.imag() >= y0 - margin &&
         z.imag() <= y1 + margin;
}

namespace {

constexpr int kEdgeSamples = 64;
const double kLogBoundaryFloor = std::log(1e-9);

// f'/f, overflow-free.
ComplexPoint log_derivative(const FunctionExpr& f, ComplexPoint z) {
  const auto vd = evaluate_with_derivative_scaled(f, z, dominant_exponent(f, z));
  return vd.derivative / vd.value;
}

bool near_zero(const FunctionExpr& f, ComplexPoint z) {
  const double s = dominant_exponent(f, z);
  const double m = std::abs(evaluate_scaled(f, z, s));
  return !(m > 0.0) || std::log(m) <= kLogBoundaryFloor;
}

bool segment_clear(const FunctionExpr& f, ComplexPoint a, ComplexPoint b) {
  for (int j = 0; j <= kEdgeSamples; ++j)
    if (near_zero(f, a + (b - a) * (static_cast<double>(j) / kEdgeSamples))) return false;
  return true;
}

// Winding number of f around the box, or nullopt when the boundary is unsafe.
std::optional<double> winding(const FunctionExpr& f, const Box& b) {
  const ComplexPoint c[4] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
  for (int e = 0; e < 4; ++e)
    if (!segment_clear(f, c[e], c[(e + 1) % 4])) return std::nullopt;
  QuadratureOptions opts;
  opts.abs_tol = 1e-8;
  opts.rel_tol = 1e-10;
  opts.max_intervals = 1000;
  ComplexPoint total{};
  for (int e = 0; e < 4; ++e) {
    const ComplexPoint a = c[e], d = c[(e + 1) % 4] - c[e];
    bool finite = true;
    const auto r = integrate_gk21(
        [&](double t) {
          const ComplexPoint v = log_derivative(f, a + t * d) * d;
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            finite = false;
            return ComplexPoint{};
          }
          return v;
        },
        0.0, 1.0, opts);
    // Rounding noise in f'/f can stall the tolerance; an integer needs far less.
    if (!finite || (!r.converged && !(r.error < 1e-3))) return std::nullopt;
    total += r.value;
  }
  const double w = (total / ComplexPoint(0.0, 2.0 * kPi)).real();
  if (std::abs(w - std::round(w)) > 0.1) return std::nullopt;
  return w;
}

Box grown(const Box& b, double d) { return {b.x0 - d, b.x1 + d, b.y0 - d, b.y1 + d}; }

}  // namespace

ZeroCount count_zeros_detailed(const FunctionExpr& f, const Box& box) {
  if (!(box.x1 > box.x0 && box.y1 > box.y0)) throw InputError("count_zeros: degenerate box");
  for (int j = 0; j <= 5; ++j) {
    const int sign = (j % 2 == 1) ? 1 : -1;
    const Box b = grown(box, sign * ((j + 1) / 2) * 1e-3 * box.size());
    if (const auto w = winding(f, b)) return {static_cast<int>(std::lround(*w)), *w, b, j};
  }
  throw NumericError("count_zeros: zero on or near the boundary after 5 jiggles");
}

int count_zeros(const FunctionExpr& f, const Box& box) { return count_zeros_detailed(f, box).count; }

int ZeroList::total() const noexcept {
  int n = 0;
  for (const auto& z : zeros) n += z.multiplicity;
  return n;
}

int ZeroList::count_within(double r) const noexcept {
  int n = 0;
  for (const auto& z : zeros)
    if (std::abs(z.location) <= r) n += z.multiplicity;
  return n;
}

ComplexPoint newton_refine(const FunctionExpr& f, ComplexPoint z, int multiplicity) {
  auto log_mod = [&](ComplexPoint w) { return log_abs(f, w); };
  double cur = log_mod(z);
  for (int it = 0; it < 20; ++it) {
    const double s = dominant_exponent(f, z);
    const auto vd = evaluate_with_derivative_scaled(f, z, s);
    if (vd.value == ComplexPoint{} || vd.derivative == ComplexPoint{}) break;
    ComplexPoint step = static_cast<double>(multiplicity) * vd.value / vd.derivative;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    ComplexPoint next = z - step;
    double val = log_mod(next);
    for (int h = 0; h < 30 && val > cur; ++h) {
      step *= 0.5;
      next = z - step;
      val = log_mod(next);
    }
    if (val > cur) break;
    z = next;
    cur = val;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

namespace {

void locate_rec(const FunctionExpr& f, const Box& box, int count, double floor_side,
                std::vector<Zero>& out) {
  if (count <= 0) return;
  const ComplexPoint c = box.center();
  const bool small = box.size() <= floor_side;
  if (count == 1 || small) {
    const ComplexPoint z = newton_refine(f, c, count);
    if (box.contains(z, 0.05 * box.size()) || small) {
      out.push_back({box.contains(z, 0.05 * box.size()) ? z : c, count});
      return;
    }
  }
  // Split the longer side on a line that stays clear of zeros.
  static const double offsets[] = {0.0, 0.0137, -0.0213, 0.0311, -0.0419, 0.0523, -0.0631, 0.0743};
  const bool vertical = box.width() >= box.height();
  for (double off : offsets) {
    Box a = box, b = box;
    if (vertical) {
      const double x = c.real() + off * box.width();
      a.x1 = b.x0 = x;
      if (!segment_clear(f, {x, box.y0}, {x, box.y1})) continue;
    } else {
      const double y = c.imag() + off * box.height();
      a.y1 = b.y0 = y;
      if (!segment_clear(f, {box.x0, y}, {box.x1, y})) continue;
    }
    const auto wa = winding(f, a);
    const auto wb = winding(f, b);
    if (!wa || !wb) continue;
    const int na = static_cast<int>(std::lround(*wa));
    const int nb = static_cast<int>(std::lround(*wb));
    if (na + nb != count) continue;
    locate_rec(f, a, na, floor_side, out);
    locate_rec(f, b, nb, floor_side, out);
    return;
  }
  // Every candidate line grazes the cluster: report it whole.
  if (box.size() <= 0.1) {
    const ComplexPoint z = newton_refine(f, c, count);
    out.push_back({box.contains(z, 0.05 * box.size()) ? z : c, count});
    return;
  }
  throw NumericError("locate_zeros: no clear subdivision line");
}

}  // namespace

ZeroList locate_zeros(const FunctionExpr& f, const Box& region, double resolution) {
  if (!(resolution > 0.0)) throw InputError("locate_zeros: resolution must be positive");
  const auto top = count_zeros_detailed(f, region);
  ZeroList zl;
  locate_rec(f, top.box, top.count, std::max(resolution, 1e-3), zl.zeros);
  std::sort(zl.zeros.begin(), zl.zeros.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    return std::arg(a.location) < std::arg(b.location);
  });
  return zl;
}

double carleman_lhs(const ZeroList& zeros, double R) {
  if (!(R > 0.0)) throw InputError("carleman_lhs: R must be positive");
  double s = 0.0;
  for (const auto& z : zeros.zeros) {
    const double r = std::abs(z.location);
    if (z.location.real() <= 0.0 || r > R) continue;
    const double cos_t = z.location.real() / r;
    s += z.multiplicity * (1.0 / r - r / (R * R)) * cos_t;
  }
  return s;
}

namespace {

// log|f(z)|, nudging z when it lands on an exact zero.
double safe_log_abs(const FunctionExpr& f, ComplexPoint z, ComplexPoint nudge) {
  double v = log_abs(f, z);
  if (std::isfinite(v)) return v;
  v = log_abs(f, z + nudge);
  if (!std::isfinite(v)) throw NumericError("carleman_rhs: log|f| not finite at a quadrature node");
  return v;
}

}  // namespace

CarlemanRhs carleman_rhs(const FunctionExpr& f, double R, double t_min) {
  if (!(t_min > 0.0) || !(R > t_min)) throw InputError("carleman_rhs: need 0 < t_min < R");
  CarlemanRhs out;
  out.origin_zero = !std::isfinite(log_abs(f, 0.0));
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  opts.rel_tol = 1e-12;
  opts.max_intervals = 20000;
  auto axis_integrand = [&](double t) {
    const double lf = safe_log_abs(f, {0.0, t}, {1e-12 * t, 0.0}) + safe_log_abs(f, {0.0, -t}, {1e-12 * t, 0.0});
    return (1.0 / (t * t) - 1.0 / (R * R)) * lf;
  };
  const auto ax = integrate_gk21([&](double t) { return ComplexPoint(axis_integrand(t), 0.0); }, t_min, R, opts);
  const auto arc = integrate_gk21(
      [&](double th) {
        const ComplexPoint z = std::polar(R, th);
        return ComplexPoint(safe_log_abs(f, z, z * 1e-12) * std::cos(th), 0.0);
      },
      -kPi / 2.0, kPi / 2.0, opts);
  out.axis = ax.value.real() / (2.0 * kPi);
  out.arc = arc.value.real() / (kPi * R);
  out.converged = ax.converged && arc.converged;
  out.cutoff_log_modulus = log_abs(f, {0.0, t_min}) + log_abs(f, {0.0, -t_min});
  return out;
}

CarlemanSeries carleman_series(const FunctionExpr& f, const std::vector<double>& radii, double t_min,
                               double x_min) {
  if (radii.empty()) throw InputError("carleman_series: no radii");
  const double r_max = *std::max_element(radii.begin(), radii.end());
  if (!(x_min > 0.0) || !(r_max > x_min)) throw InputError("carleman_series: need 0 < x_min < R");
  CarlemanSeries out;
  out.zeros = locate_zeros(f, {x_min, 1.01 * r_max, -1.01 * r_max, 1.01 * r_max}, 1e-8);
  for (double R : radii) {
    double Ru = R;
    bool clear = false;
    for (int j = 0; j <= 5 && !clear; ++j) {
      Ru = R * (1.0 + 1e-4 * j);
      clear = std::none_of(out.zeros.zeros.begin(), out.zeros.zeros.end(),
                           [&](const Zero& z) { return std::abs(std::abs(z.location) - Ru) < 1e-9 * Ru; });
    }
    if (!clear) throw NumericError("carleman_series: zero on |z| = R after jiggling, R = " + std::to_string(R));
    CarlemanRow row;
    row.R = R;
    row.R_used = Ru;
    row.lhs = carleman_lhs(out.zeros, Ru);
    row.rhs = carleman_rhs(f, Ru, t_min).value();
    row.residual = row.lhs - row.rhs;
    out.rows.push_back(row);
  }
  double lo = HUGE_VAL, hi = -HUGE_VAL, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : out.rows) {
    lo = std::min(lo, r.residual);
    hi = std::max(hi, r.residual);
    const double x = std::log(r.R);
    sx += x;
    sy += r.residual;
    sxx += x * x;
    sxy += x * r.residual;
  }
  const double n = static_cast<double>(out.rows.size());
  out.range = hi - lo;
  const double den = n * sxx - sx * sx;
  out.slope = den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  return out;
}

double density_bound(const ConvexCompact& K, double gamma) {
  if (!(gamma >= 0.0 && gamma < kPi / 2.0)) throw InputError("density_bound: gamma must lie in [0, pi/2)");
  return 0.5 * K.vertical_extent() / (kPi * std::cos(gamma));
}

double zero_lower_density(const ZeroList& zeros, double r) {
  if (!(r > 0.0)) throw InputError("zero_lower_density: r must be positive");
  if (zeros.zeros.empty()) return 0.0;
  constexpr int kGrid = 64;
  double best = HUGE_VAL;
  for (int j = 0; j < kGrid; ++j) {
    const double rp = 0.25 * r * std::pow(4.0, static_cast<double>(j) / (kGrid - 1));
    best = std::min(best, zeros.count_within(rp) / rp);
  }
  return best;
}

double counting_slope(const ZeroList& zeros, const std::vector<double>& radii) {
  if (radii.size() < 2) throw InputError("counting_slope: need at least two radii");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double R : radii) {
    const double y = zeros.count_within(R);
    sx += R;
    sy += y;
    sxx += R * R;
    sxy += R * y;
  }
  const double n = static_cast<double>(radii.size());
  const double den = n * sxx - sx * sx;
  return den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

std::string to_string(Verdict v) { return v == Verdict::Obstructed ? "OBSTRUCTED" : "CONSISTENT"; }

ObstructionReport obstruction_check(const FunctionExpr& f, long horizon) {
  if (horizon < 1) throw InputError("obstruction_check: horizon must be positive");
  ObstructionReport rep;
  const auto grid = disk_grid(0.5);
  for (long n = 1; n <= horizon; ++n) {
    double sup = 0.0;
    for (const auto& z : grid) {
      sup = std::max(sup, std::abs(evaluate(f, z + static_cast<double>(n)) - z));
      if (sup >= 0.5) break;
    }
    if (sup < 0.5) rep.passing_slots.push_back(n);
  }
  for (long n : rep.passing_slots) {
    const double x = static_cast<double>(n);
    const auto found = locate_zeros(f, {x - 0.5, x + 0.5, -0.5, 0.5}, 1e-10);
    rep.zeros.zeros.insert(rep.zeros.zeros.end(), found.zeros.begin(), found.zeros.end());
  }
  double max_arg = 0.0;
  for (const auto& z : rep.zeros.zeros) max_arg = std::max(max_arg, std::abs(std::arg(z.location)));
  rep.gamma = std::min(max_arg + 0.05, kPi / 2.0 - 1e-9);
  rep.measured_density = zero_lower_density(rep.zeros, static_cast<double>(horizon));
  rep.bound = is_zero_function(f) ? 0.0 : density_bound(frequency_hull(f), rep.gamma);
  rep.verdict = rep.measured_density > rep.bound ? Verdict::Obstructed : Verdict::Consistent;
  return rep;
}

}  // namespace fhc
