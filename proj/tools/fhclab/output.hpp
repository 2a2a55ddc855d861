#ifndef FHCLAB_OUTPUT_HPP
#define FHCLAB_OUTPUT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fhc/complex_geometry.hpp"
#include "fhc/constructor.hpp"
#include "fhc/expfun.hpp"

namespace fhclab {

using json = nlohmann::json;

// Rows are printed as CSV (header row, 9 significant digits) or, with --json,
// as {"rows": [{column: value}], ...extra}. The summary goes to stderr in CSV
// mode and is already part of `extra` in JSON mode.
struct Result {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json extra = json::object();
  std::string summary;
  int exit_code = 0;
};

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<json>>& rows);
void emit(const Result& r, bool as_json, const std::string& out_path);
void write_file(const std::string& path, const std::string& text);

// Inline JSON when the text starts with '{' or '[', otherwise a file path.
json load_json(const std::string& text_or_path);

fhc::FunctionExpr parse_function(const std::string& text_or_path);
// {"vertices": [...]} or a bare vertex array.
fhc::ConvexCompact parse_convex(const std::string& text_or_path);
fhc::UniversalCandidate parse_candidate(const std::string& text_or_path);
// A real number, "re,im" or [re, im].
fhc::ComplexPoint parse_complex(const std::string& text);
// "log" or "power:c".
fhc::GrowthSpec parse_growth(const std::string& text);

json complex_json(fhc::ComplexPoint z);
json convex_json(const fhc::ConvexCompact& K);

}  // namespace fhclab

#endif  // FHCLAB_OUTPUT_HPP
