#include "fhc/complex_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "fhc/error.hpp"

namespace fhc {

namespace {

constexpr double kCollinearTol = 1e-12;

double cross(ComplexPoint o, ComplexPoint a, ComplexPoint b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool lex_less(ComplexPoint a, ComplexPoint b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Unit z with Re(z u) = <dir, u> / |dir| in the Euclidean pairing.
ComplexPoint pairing_direction(ComplexPoint dir) { return std::conj(dir) / std::abs(dir); }

}  // namespace

ConvexCompact ConvexCompact::hull(std::span<const ComplexPoint> points) {
  if (points.empty()) throw InputError("hull: empty point list");
  std::vector<ComplexPoint> pts(points.begin(), points.end());
  for (const auto& p : pts) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw InputError("hull: non-finite coordinate");
  }
  std::sort(pts.begin(), pts.end(), lex_less);

  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, std::abs(p));
  const double merge_tol = kCollinearTol * scale;

  std::vector<ComplexPoint> uniq;
  for (const auto& p : pts) {
    if (uniq.empty() || std::abs(p - uniq.back()) > merge_tol) uniq.push_back(p);
  }
  if (uniq.size() == 1) return ConvexCompact(std::move(uniq));

  // Andrew's monotone chain; near-collinear points are dropped.
  const double area_tol = kCollinearTol * scale * scale;
  std::vector<ComplexPoint> chain(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && cross(chain[k - 2], chain[k - 1], p) <= area_tol) --k;
    chain[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = uniq[i];
    while (k >= lower && cross(chain[k - 2], chain[k - 1], p) <= area_tol) --k;
    chain[k++] = p;
  }
  chain.resize(k - 1);
  if (chain.size() < 2) chain = {uniq.front(), uniq.back()};
  return ConvexCompact(std::move(chain));
}

ConvexCompact ConvexCompact::point(ComplexPoint p) {
  const ComplexPoint pts[] = {p};
  return hull(pts);
}

ConvexCompact ConvexCompact::segment(ComplexPoint a, ComplexPoint b) {
  const ComplexPoint pts[] = {a, b};
  return hull(pts);
}

double ConvexCompact::support(ComplexPoint z) const noexcept {
  double best = -HUGE_VAL;
  for (const auto& u : vertices_) best = std::max(best, (z * u).real());
  return best;
}

double ConvexCompact::indicator(double theta) const noexcept {
  return support(std::polar(1.0, theta));
}

ConvexCompact ConvexCompact::translated(ComplexPoint alpha) const {
  std::vector<ComplexPoint> shifted = vertices_;
  for (auto& v : shifted) v += alpha;
  return ConvexCompact(std::move(shifted));
}

double ConvexCompact::vertical_extent() const noexcept {
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto& v : vertices_) {
    lo = std::min(lo, v.imag());
    hi = std::max(hi, v.imag());
  }
  return hi - lo;
}

double ConvexCompact::max_modulus() const noexcept {
  double m = 0.0;
  for (const auto& v : vertices_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<ComplexPoint> ConvexCompact::facet_directions() const {
  std::vector<ComplexPoint> dirs;
  const std::size_t n = vertices_.size();
  if (n == 1) {
    dirs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  } else if (n == 2) {
    const ComplexPoint d = vertices_[1] - vertices_[0];
    for (ComplexPoint dir : {d, -d, ComplexPoint(0, 1) * d, ComplexPoint(0, -1) * d})
      dirs.push_back(pairing_direction(dir));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const ComplexPoint e = vertices_[(i + 1) % n] - vertices_[i];
      // Outward normal of a counterclockwise edge points to its right.
      dirs.push_back(pairing_direction({e.imag(), -e.real()}));
    }
  }
  return dirs;
}

Containment contains(const ConvexCompact& outer, const ConvexCompact& inner, double tol) {
  std::vector<ComplexPoint> dirs = outer.facet_directions();
  for (const auto& v : inner.vertices()) {
    if (std::abs(v) > 0.0) dirs.push_back(pairing_direction(v));
  }
  for (int j = 0; j < 360; ++j) dirs.push_back(std::polar(1.0, -kPi + 2.0 * kPi * j / 360.0));

  const double scale = 1.0 + std::max(outer.max_modulus(), inner.max_modulus());
  Containment result;
  for (const auto& z : dirs) {
    const double gap = inner.support(z) - outer.support(z);
    if (gap > tol * scale && gap > result.violation) {
      result.inside = false;
      result.violation = gap;
      result.witness_theta = std::arg(z);
    }
  }
  return result;
}

bool same_vertices(const ConvexCompact& a, const ConvexCompact& b, double tol) {
  if (a.size() != b.size()) return false;
  auto va = a.vertices();
  auto vb = b.vertices();
  std::sort(va.begin(), va.end(), lex_less);
  std::sort(vb.begin(), vb.end(), lex_less);
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (std::abs(va[i].real() - vb[i].real()) > tol ||
        std::abs(va[i].imag() - vb[i].imag()) > tol)
      return false;
  }
  return true;
}

ConvexCompact hull(std::span<const ComplexPoint> points) { return ConvexCompact::hull(points); }

}  // namespace fhc
