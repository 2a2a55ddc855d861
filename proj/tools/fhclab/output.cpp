#include "output.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fhc/error.hpp"
#include "fhc/io.hpp"

namespace fhclab {

using fhc::InputError;

namespace {

std::string csv_cell(const json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fhc::csv_number(v.get<double>() + 0.0);
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

bool looks_inline(const std::string& s) {
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::string text_of(const std::string& text_or_path) {
  return looks_inline(text_or_path) ? text_or_path : fhc::read_text_file(text_or_path);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<json>>& rows) {
  for (std::size_t j = 0; j < columns.size(); ++j) os << (j ? "," : "") << columns[j];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_cell(row[j]);
    os << '\n';
  }
}

void emit(const Result& r, bool as_json, const std::string& out_path) {
  std::ostringstream os;
  if (as_json) {
    json doc = r.extra;
    json rows = json::array();
    for (const auto& row : r.rows) {
      json obj = json::object();
      for (std::size_t j = 0; j < row.size() && j < r.columns.size(); ++j) obj[r.columns[j]] = row[j];
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    doc["exit_code"] = r.exit_code;
    os << doc.dump(2) << '\n';
  } else {
    write_csv(os, r.columns, r.rows);
    if (!r.summary.empty()) std::cerr << r.summary << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
  } else {
    write_file(out_path, os.str());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

json load_json(const std::string& text_or_path) {
  const auto text = text_of(text_or_path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("JSON parse error at byte " + std::to_string(e.byte) + " in " +
                     (looks_inline(text_or_path) ? std::string("inline input") : text_or_path));
  }
}

fhc::FunctionExpr parse_function(const std::string& text_or_path) {
  if (text_or_path.empty()) throw InputError("missing function spec (--spec)");
  return fhc::function_from_json(text_of(text_or_path));
}

fhc::ConvexCompact parse_convex(const std::string& text_or_path) {
  if (text_or_path.empty()) throw InputError("missing convex set (--K)");
  auto j = load_json(text_or_path);
  if (j.is_array()) j = json{{"vertices", j}};
  return fhc::convex_from_json(j.dump());
}

fhc::UniversalCandidate parse_candidate(const std::string& text_or_path) {
  if (text_or_path.empty()) throw InputError("missing candidate (--candidate)");
  return fhc::candidate_from_json(text_of(text_or_path));
}

fhc::ComplexPoint parse_complex(const std::string& text) {
  json j;
  try {
    j = json::parse(text.find(',') != std::string::npos && !looks_inline(text) ? "[" + text + "]" : text);
  } catch (const json::parse_error&) {
    throw InputError("expected a number or re,im, got \"" + text + "\"");
  }
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a number or re,im, got \"" + text + "\"");
}

fhc::GrowthSpec parse_growth(const std::string& text) {
  if (text == "log") return fhc::GrowthSpec::log();
  if (text.rfind("power:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double c = std::stod(text.substr(6), &used);
      if (used == text.size() - 6 && c > 0.0) return fhc::GrowthSpec::power(c);
    } catch (const std::exception&) {
    }
  }
  throw InputError("growth majorant must be \"log\" or \"power:c\" with c > 0, got \"" + text + "\"");
}

json complex_json(fhc::ComplexPoint z) { return json::array({z.real(), z.imag()}); }

json convex_json(const fhc::ConvexCompact& K) {
  json v = json::array();
  for (const auto& p : K.vertices()) v.push_back(complex_json(p));
  return v;
}

}  // namespace fhclab
