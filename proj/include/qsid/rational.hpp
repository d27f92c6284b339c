#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace qsid {

/// Exact rational used for exponents and product/theta parameters.
using Rational = boost::rational<std::int64_t>;

/// An exponent of q. Always reduced, denominator positive.
using Exponent = Rational;

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

/// "num/den", reduced; the denominator is always printed ("0/1").
std::string format_exponent(const Exponent& e);

/// Parses "a", "a/b" or "-a/b".
Exponent parse_exponent(std::string_view text);

/// Largest integer not exceeding x.
std::int64_t floor_of(const Rational& x);

} // namespace qsid
