#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "qsid/products.hpp"

namespace qsid {

using ExpansionSpec = std::variant<ProductSpec, ThetaSpec>;

/// Parses a ProductSpec or ThetaSpec document. Rationals are [num, den] pairs
/// (a bare integer is also accepted). Throws ConfigError; syntax errors carry
/// the byte position reported by the JSON parser.
ExpansionSpec parse_expansion_spec(const std::string& text);

nlohmann::json to_json(const ProductSpec& spec);
nlohmann::json to_json(const ThetaSpec& spec);

QSeries expand(const ExpansionSpec& spec, const Exponent& order);

} // namespace qsid
