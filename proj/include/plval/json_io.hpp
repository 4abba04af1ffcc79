// JSON and CSV formats of polytopes, functions, kernels, profiles and
// reports. Output is canonical: keys sorted, floats with 17 significant
// digits, so identical inputs give byte-identical files.
#pragma once

#include "plval/complex.hpp"
#include "plval/kernel.hpp"
#include "plval/polytope.hpp"
#include "plval/report.hpp"
#include "plval/valuation.hpp"

#include <json.hpp>

#include <string>

namespace plval {

using Json = nlohmann::json;

/// Canonical single-line serialization.
std::string dump_canonical(const Json& j);
/// Parses text; syntax errors raise Error{InvalidInput}.
Json parse_json(const std::string& text);
/// Reads and parses a file; a missing file raises Error{InvalidInput}.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// {"dim", "vertices"} in; facets are always recomputed.
Polytope polytope_from_json(const Json& j);
/// Adds "facets": [{"normal", "support", "vertices"}].
Json to_json(const Polytope& p);

/// Validates every PLFunction invariant; a nonconforming pair is named in
/// the Error{InvalidInput} message.
PLFunction pl_function_from_json(const Json& j);
Json to_json(const PLFunction& f);

/// {"type": "power", "coeff", "exponent"} |
/// {"type": "piecewise_poly", "breakpoints", "coefficients", "left_exponent", "right_exponent"} |
/// {"type": "tabulated", "s", "h"} | {"type": "sum", "terms": [...]}.
/// The kernel is validated after parsing.
ValuationKernel kernel_from_json(const Json& j);
Json to_json(const ValuationKernel& h);

Json to_json(const PropertyReport& r);
Json to_json(const GrowthReport& r);

/// "s,c" header plus one row per grid point, then c^(j) columns.
std::string profile_csv(const CProfile& profile);
/// Reads the s and c columns of a profile CSV and rebuilds the derivative
/// tables for dimension n.
CProfile profile_from_csv(const std::string& text, int n);

/// "%.17g" rendering of a double; non-finite values become "null".
std::string format_double(double x);

}  // namespace plval
