#include "fhc/borel.hpp"

#include <algorithm>
#include <cmath>

#include "fhc/error.hpp"

namespace fhc {

namespace {

void add_part(std::vector<PoleTerm>& poles, const PoleTerm& p) {
  auto it = std::find_if(poles.begin(), poles.end(), [&](const PoleTerm& q) { return q.at == p.at; });
  if (it == poles.end()) {
    poles.push_back(p);
    return;
  }
  if (it->coefs.size() < p.coefs.size()) it->coefs.resize(p.coefs.size());
  for (std::size_t j = 0; j < p.coefs.size(); ++j) it->coefs[j] += p.coefs[j];
}

void normalize(std::vector<PoleTerm>& poles) {
  for (auto& p : poles)
    while (!p.coefs.empty() && p.coefs.back() == ComplexPoint{}) p.coefs.pop_back();
  poles.erase(std::remove_if(poles.begin(), poles.end(), [](const PoleTerm& p) { return p.coefs.empty(); }),
              poles.end());
}

}  // namespace

ComplexPoint RationalExpr::operator()(ComplexPoint z) const {
  ComplexPoint sum{};
  for (const auto& p : poles) {
    const ComplexPoint inv = 1.0 / (z - p.at);
    ComplexPoint pw = inv;
    for (const auto& c : p.coefs) {
      sum += c * pw;
      pw *= inv;
    }
  }
  return sum;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  RationalExpr out = a;
  for (const auto& p : b.poles) add_part(out.poles, p);
  normalize(out.poles);
  return out;
}

RationalExpr borel_closed_form(const ExpPolyFunction& f) {
  RationalExpr out;
  for (const auto& t : f.terms()) {
    PoleTerm p{t.freq, {}};
    double fact = 1.0;
    for (std::size_t k = 0; k < t.poly.size(); ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      p.coefs.push_back(fact * t.poly[k]);
    }
    add_part(out.poles, p);
  }
  normalize(out.poles);
  return out;
}

ComplexPoint BorelClosedForm::operator()(ComplexPoint z) const {
  ComplexPoint sum = rational(z);
  if (logs.empty()) return sum;
  ComplexPoint centroid{};
  for (const auto& l : logs) centroid += l.at;
  centroid /= static_cast<double>(logs.size());
  ComplexPoint d = centroid - z;
  d = std::abs(d) > 0.0 ? d / std::abs(d) : ComplexPoint{1.0, 0.0};
  // Cuts along +d from every branch point; the rotation constant drops out
  // because the coefficients and their first moments sum to zero.
  for (const auto& l : logs) {
    const ComplexPoint w = z - l.at;
    if (w == ComplexPoint{}) continue;
    sum += l.coef * w * std::log(w / -d);
  }
  return sum;
}

BorelClosedForm borel_closed_form(const FunctionExpr& f) {
  BorelClosedForm out;
  out.rational = borel_closed_form(f.exppoly);
  for (const auto& wb : f.blocks) {
    if (wb.coef == ComplexPoint{}) continue;
    const auto& b = wb.block;
    if (b.shift != 0.0) throw InputError("borel_closed_form: shifted blocks have no closed form");
    const ComplexPoint parts[3][2] = {{b.modulation + 2.0 * b.alpha, wb.coef},
                                      {b.modulation + b.alpha, -2.0 * wb.coef},
                                      {b.modulation, wb.coef}};
    for (const auto& part : parts) {
      auto it = std::find_if(out.logs.begin(), out.logs.end(),
                             [&](const LogTerm& l) { return l.at == part[0]; });
      if (it == out.logs.end()) out.logs.push_back({part[0], part[1]});
      else it->coef += part[1];
    }
  }
  double scale = 0.0;
  for (const auto& l : out.logs) scale = std::max(scale, std::abs(l.coef));
  out.logs.erase(std::remove_if(out.logs.begin(), out.logs.end(),
                                [&](const LogTerm& l) { return std::abs(l.coef) <= 1e-13 * scale; }),
                 out.logs.end());
  return out;
}

SeriesValue borel_series(const FunctionExpr& f, ComplexPoint z, int terms) {
  if (terms < 1) throw InputError("borel_series: terms must be positive");
  if (z == ComplexPoint{}) throw InputError("borel_series: z must be nonzero");
  SeriesValue out;
  out.outside_radius = std::abs(z) <= exponential_type(f);
  const auto c = taylor_coefficients(f, static_cast<std::size_t>(terms));
  // factor_n = n! / z^{n+1}
  ComplexPoint factor = 1.0 / z;
  for (int n = 0; n < terms; ++n) {
    if (n > 0) factor *= static_cast<double>(n) / z;
    const ComplexPoint t = c[static_cast<std::size_t>(n)] * factor;
    out.value += t;
    out.last_term = std::abs(t);
  }
  return out;
}

SeriesValue transposed_borel(const FunctionExpr& f, ComplexPoint z, int terms) {
  if (terms < 1) throw InputError("transposed_borel: terms must be positive");
  SeriesValue out;
  out.outside_radius = std::abs(z) * exponential_type(f) >= 1.0;
  const auto c = taylor_coefficients(f, static_cast<std::size_t>(terms));
  ComplexPoint factor = 1.0;  // n! z^n
  for (int n = 0; n < terms; ++n) {
    if (n > 0) factor *= static_cast<double>(n) * z;
    const ComplexPoint t = c[static_cast<std::size_t>(n)] * factor;
    out.value += t;
    out.last_term = std::abs(t);
  }
  return out;
}

ConvexCompact singular_hull(const RationalExpr& b) {
  if (b.poles.empty()) throw InputError("singular_hull: no poles");
  std::vector<ComplexPoint> pts;
  for (const auto& p : b.poles) pts.push_back(p.at);
  return ConvexCompact::hull(pts);
}

ConvexCompact singular_hull(const BorelClosedForm& b) {
  std::vector<ComplexPoint> pts;
  for (const auto& p : b.rational.poles) pts.push_back(p.at);
  for (const auto& l : b.logs) pts.push_back(l.at);
  if (pts.empty()) throw InputError("singular_hull: no singularities");
  return ConvexCompact::hull(pts);
}

ComplexPoint contour_residue(const std::function<ComplexPoint(ComplexPoint)>& g, ComplexPoint center,
                             double radius, int nodes) {
  if (!(radius > 0.0) || nodes < 4) throw InputError("contour_residue: bad contour");
  ComplexPoint sum{};
  for (int j = 0; j < nodes; ++j) {
    const ComplexPoint u = std::polar(radius, 2.0 * kPi * j / nodes);
    sum += g(center + u) * u;
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace fhc
