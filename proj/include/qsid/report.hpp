#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "qsid/rational.hpp"

namespace qsid {

/// Parameters of a registry case. Unset fields are not part of the case.
struct CaseParams {
    std::optional<int> l;
    std::optional<int> s;
    std::optional<int> r;
    std::string reading;

    bool operator==(const CaseParams&) const = default;
};

struct Mismatch {
    Exponent exponent;
    mpz_class lhs;
    mpz_class rhs;
};

/// Outcome of comparing two sides up to an order. failed() iff mismatch is set.
struct VerificationReport {
    std::string name;
    CaseParams params;
    Exponent order;
    std::optional<Mismatch> mismatch;
    double elapsed_ms = 0.0;
    /// Free-form context: chain link, selected reading, variant id.
    std::string detail;

    bool passed() const { return !mismatch.has_value(); }
    bool failed() const { return mismatch.has_value(); }
};

} // namespace qsid
