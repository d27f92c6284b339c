#pragma once

#include <stdexcept>

namespace qsid {

/// Parameters outside an operation's domain (parity, ranges, guards).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A product factor whose exponent does not raise the order.
class DivergentFactorError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A coefficient or comparison requested at or past the known order.
class TruncationError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class NonInvertibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed spec or suite configuration input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace qsid
