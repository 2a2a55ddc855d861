#ifndef FHC_IO_HPP
#define FHC_IO_HPP

#include <string>
#include <string_view>

#include "fhc/borel.hpp"
#include "fhc/carleman.hpp"
#include "fhc/complex_geometry.hpp"
#include "fhc/constructor.hpp"
#include "fhc/expfun.hpp"

namespace fhc {

// %.{digits}g; JSON uses 17 digits, CSV 9.
std::string format_number(double v, int digits);
inline std::string csv_number(double v) { return format_number(v, 9); }

// Complex numbers are [re, im]; a bare number is read as real.
//
// ConvexCompact  {"vertices": [[re, im], ...]}
// FunctionExpr   {"blocks": [{"coef", "alpha", "shift", "beta"}],
//                 "exppoly": [{"poly": [c0, c1, ...], "freq"}]}
//                or {"preset": "sine_pi"}; presets and explicit terms add up.
// RationalExpr   {"poles": [{"at", "order", "coefs": [...]}]}
// Candidate      {"K", "targets": [...], "schedule": [[slot, target], ...], "q_exponent"}
//
// Parsers throw InputError carrying the parser's byte position on syntax errors.
std::string to_json(const ConvexCompact& K);
std::string to_json(const FunctionExpr& f);
std::string to_json(const RationalExpr& r);
std::string to_json(const UniversalCandidate& c);
std::string to_json(const ObstructionReport& r);

ConvexCompact convex_from_json(std::string_view text);
FunctionExpr function_from_json(std::string_view text);
RationalExpr rational_from_json(std::string_view text);
// Rebuilds expr through build_candidate, so membership is re-verified.
UniversalCandidate candidate_from_json(std::string_view text);

// re,im,multiplicity with a header row.
std::string zeros_csv(const ZeroList& zeros);

// Whole file as text; InputError when it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace fhc

#endif  // FHC_IO_HPP
