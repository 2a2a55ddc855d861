#include "fhc/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fhc/error.hpp"

namespace fhc {

using json = nlohmann::json;

std::string format_number(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace {

json cjson(ComplexPoint z) { return json::array({z.real(), z.imag()}); }

ComplexPoint cparse(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(std::string("expected a number or [re, im] for ") + what);
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

json convex_json(const ConvexCompact& K) {
  json v = json::array();
  for (const auto& p : K.vertices()) v.push_back(cjson(p));
  return {{"vertices", v}};
}

ConvexCompact convex_parse(const json& j) {
  const auto& v = field(j, "vertices");
  if (!v.is_array() || v.empty()) throw InputError("\"vertices\" must be a nonempty array");
  std::vector<ComplexPoint> pts;
  for (const auto& p : v) pts.push_back(cparse(p, "vertex"));
  return ConvexCompact::hull(pts);
}

json function_json(const FunctionExpr& f) {
  json blocks = json::array();
  for (const auto& wb : f.blocks)
    blocks.push_back({{"coef", cjson(wb.coef)},
                      {"alpha", cjson(wb.block.alpha)},
                      {"shift", wb.block.shift},
                      {"beta", cjson(wb.block.modulation)}});
  json terms = json::array();
  for (const auto& t : f.exppoly.terms()) {
    json poly = json::array();
    for (const auto& c : t.poly) poly.push_back(cjson(c));
    terms.push_back({{"poly", poly}, {"freq", cjson(t.freq)}});
  }
  return {{"blocks", blocks}, {"exppoly", terms}};
}

FunctionExpr function_parse(const json& j) {
  if (!j.is_object()) throw InputError("function spec must be a JSON object");
  FunctionExpr f;
  if (j.contains("preset")) {
    const auto name = j.at("preset").get<std::string>();
    if (name == "sine_pi") f += FunctionExpr::sine_pi();
    else throw InputError("unknown preset \"" + name + "\"");
  }
  if (j.contains("blocks")) {
    for (const auto& b : j.at("blocks")) {
      WeightedBlock wb;
      wb.coef = b.contains("coef") ? cparse(b.at("coef"), "coef") : ComplexPoint{1.0, 0.0};
      wb.block.alpha = cparse(field(b, "alpha"), "alpha");
      wb.block.shift = b.value("shift", 0.0);
      wb.block.modulation = b.contains("beta") ? cparse(b.at("beta"), "beta") : ComplexPoint{};
      f.blocks.push_back(wb);
    }
  }
  if (j.contains("exppoly")) {
    for (const auto& t : j.at("exppoly")) {
      ExpPolyTerm term;
      for (const auto& c : field(t, "poly")) term.poly.push_back(cparse(c, "poly"));
      term.freq = t.contains("freq") ? cparse(t.at("freq"), "freq") : ComplexPoint{};
      f.exppoly.add(std::move(term));
    }
  }
  return f;
}

// Type and range errors from the JSON layer become InputError.
template <class F>
auto guarded(F&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON input: ") + e.what());
  }
}

json schedule_json(const Schedule& s) {
  json a = json::array();
  for (const auto& x : s.assignments) a.push_back(json::array({x.slot, x.target}));
  return a;
}

}  // namespace

std::string to_json(const ConvexCompact& K) { return convex_json(K).dump(); }
std::string to_json(const FunctionExpr& f) { return function_json(f).dump(); }

std::string to_json(const RationalExpr& r) {
  json poles = json::array();
  for (const auto& p : r.poles) {
    json coefs = json::array();
    for (const auto& c : p.coefs) coefs.push_back(cjson(c));
    poles.push_back({{"at", cjson(p.at)}, {"order", p.order()}, {"coefs", coefs}});
  }
  return json{{"poles", poles}}.dump();
}

std::string to_json(const UniversalCandidate& c) {
  json targets = json::array();
  for (const auto& t : c.targets) targets.push_back(function_json(t));
  return json{{"K", convex_json(c.K)},
              {"targets", targets},
              {"schedule", schedule_json(c.schedule)},
              {"q_exponent", c.q_exponent}}
      .dump();
}

std::string to_json(const ObstructionReport& r) {
  json zeros = json::array();
  for (const auto& z : r.zeros.zeros)
    zeros.push_back({{"at", cjson(z.location)}, {"multiplicity", z.multiplicity}});
  return json{{"measured_density", r.measured_density},
              {"bound", r.bound},
              {"gamma", r.gamma},
              {"verdict", to_string(r.verdict)},
              {"passing_slots", r.passing_slots},
              {"zeros", zeros}}
      .dump();
}

ConvexCompact convex_from_json(std::string_view text) {
  return guarded([&] { return convex_parse(parse(text)); });
}

FunctionExpr function_from_json(std::string_view text) {
  return guarded([&] { return function_parse(parse(text)); });
}

RationalExpr rational_from_json(std::string_view text) {
  return guarded([&] {
    const auto j = parse(text);
    RationalExpr r;
    for (const auto& p : field(j, "poles")) {
      PoleTerm t;
      t.at = cparse(field(p, "at"), "at");
      for (const auto& c : field(p, "coefs")) t.coefs.push_back(cparse(c, "coefs"));
      if (p.contains("order") && p.at("order").get<int>() != t.order())
        throw InputError("pole order does not match the number of coefficients");
      r = r + RationalExpr{{t}};
    }
    return r;
  });
}

UniversalCandidate candidate_from_json(std::string_view text) {
  return guarded([&] {
    const auto j = parse(text);
    const auto K = convex_parse(field(j, "K"));
    std::vector<FunctionExpr> targets;
    for (const auto& t : field(j, "targets")) targets.push_back(function_parse(t));
    Schedule s;
    for (const auto& a : field(j, "schedule")) {
      if (!a.is_array() || a.size() != 2) throw InputError("schedule entries are [slot, target]");
      s.assignments.push_back({a[0].get<long>(), a[1].get<int>()});
    }
    auto c = build_candidate(targets, s, K);
    c.q_exponent = j.value("q_exponent", 2.0);
    return c;
  });
}

std::string zeros_csv(const ZeroList& zeros) {
  std::ostringstream os;
  os << "re,im,multiplicity\n";
  for (const auto& z : zeros.zeros)
    os << csv_number(z.location.real()) << ',' << csv_number(z.location.imag()) << ',' << z.multiplicity << '\n';
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fhc
