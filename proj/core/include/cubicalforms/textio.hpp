#pragma once

#include <string>
#include <vector>

#include "cubicalforms/poly.hpp"
#include "cubicalforms/series.hpp"

namespace cubicalforms {

// Parsers for the canonical text forms emitted by Scalar/Poly/TSeries
// to_string().  The grammar is a small +,-,*,^ expression language over ring
// variables, integer and rational literals, the special name `zeta`, and
// parentheses; a series additionally carries its trailing truncation marker
// "+ O(N)".  All parse failures raise TextParseError.

Scalar parse_scalar(const std::string& text);
Poly parse_poly(RingPtr ring, const std::string& text);
TSeries parse_series(RingPtr ring, const std::vector<std::string>& series_vars,
                     const std::string& text);

// JSON forms (stable key order, round-trip exact).  Coefficients are carried
// as canonical scalar strings so arbitrary-precision values survive.
std::string poly_to_json(const Poly& p);
Poly poly_from_json(RingPtr ring, const std::string& json_text);
std::string series_to_json(const TSeries& s);
TSeries series_from_json(RingPtr ring, const std::string& json_text);

}  // namespace cubicalforms
