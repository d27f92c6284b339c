#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsid/rational.hpp"
#include "qsid/report.hpp"

namespace qsid {

using Integer = mpz_class;

struct Term {
    Exponent exponent;
    Integer coeff;
};

/**
 * Truncated Laurent-Puiseux series in q with exact integer coefficients.
 *
 * Exponents live on the lattice (1/D)Z. Storage is dense: slot i holds the
 * coefficient of q^{(min + i)/D} for min <= min + i < trunc, and the series is
 * known exactly for every exponent below trunc/D. Values are kept in a
 * canonical form: no leading zero slots, and D is the smallest denominator
 * that represents every nonzero exponent and the truncation.
 */
class QSeries {
public:
    /// The zero series known to order 0.
    QSeries() = default;

    /// c q^e + O(q^trunc). If denom is nonzero, e and trunc must be
    /// representable with that denominator.
    static QSeries monomial(const Integer& c, const Exponent& e, const Exponent& trunc,
                            std::int64_t denom = 0);
    static QSeries one(const Exponent& trunc) { return monomial(1, 0, trunc); }
    static QSeries zero(const Exponent& trunc) { return monomial(0, 0, trunc); }

    /// Sums the given terms (duplicates accumulate); terms at or past trunc are dropped.
    static QSeries from_terms(const std::vector<Term>& terms, const Exponent& trunc);

    std::int64_t denom() const { return denom_; }
    Exponent truncation() const { return Exponent(trunc_, denom_); }
    /// Lowest stored exponent; equals the truncation for a series with no nonzero terms.
    Exponent min_exponent() const { return Exponent(min_, denom_); }
    bool is_zero() const { return coeffs_.empty(); }

    /// Exact coefficient of q^e; throws TruncationError when e >= truncation.
    Integer coeff(const Exponent& e) const;

    /// Nonzero terms in ascending exponent order.
    std::vector<Term> terms() const;

    /// Scaled view: coefficient slot i is q^{(scaled_min() + i)/denom()}.
    std::int64_t scaled_min() const { return min_; }
    std::int64_t scaled_trunc() const { return trunc_; }
    const std::vector<Integer>& slots() const { return coeffs_; }

    friend QSeries add(const QSeries& a, const QSeries& b);
    friend QSeries mul(const QSeries& a, const QSeries& b);
    friend QSeries inverse(const QSeries& a);
    friend QSeries mul_binomial_power(const QSeries& a, int sign, const Exponent& e,
                                      std::int64_t power);
    friend QSeries substitute_power(const QSeries& a, const Rational& u);
    friend QSeries shift(const QSeries& a, const Exponent& e);
    friend QSeries scale(const QSeries& a, const Integer& c);
    friend QSeries truncate(const QSeries& a, const Exponent& order);
    friend VerificationReport equal_up_to(const QSeries& a, const QSeries& b,
                                          const Exponent& order);

private:
    QSeries(std::int64_t denom, std::int64_t min, std::int64_t trunc,
            std::vector<Integer> coeffs);

    /// Same series on the finer lattice (1/d)Z; d must be a multiple of denom().
    QSeries lifted(std::int64_t d) const;
    void normalize();

    std::int64_t denom_ = 1;
    std::int64_t min_ = 0;
    std::int64_t trunc_ = 0;
    std::vector<Integer> coeffs_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);

/// Two-sided inverse; the lowest term must be +-q^{e0}. Result starts at q^{-e0}.
QSeries inverse(const QSeries& a);

/// a * (1 + sign q^e)^power, applied one linear factor at a time. e must be positive.
QSeries mul_binomial_power(const QSeries& a, int sign, const Exponent& e, std::int64_t power);

/// q -> q^u for a positive rational u.
QSeries substitute_power(const QSeries& a, const Rational& u);

/// Multiplication by the monomial q^e.
QSeries shift(const QSeries& a, const Exponent& e);
QSeries scale(const QSeries& a, const Integer& c);
QSeries negate(const QSeries& a);
QSeries sub(const QSeries& a, const QSeries& b);

/// Forgets everything at or beyond `order`; order must not exceed the truncation.
QSeries truncate(const QSeries& a, const Exponent& order);

Integer coeff(const QSeries& a, const Exponent& e);

/// Coefficientwise comparison below `order`, which must not exceed either truncation.
VerificationReport equal_up_to(const QSeries& a, const QSeries& b, const Exponent& order);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

/// (exponent numerator, exponent denominator, decimal coefficient) per nonzero term.
struct SerializedTerm {
    std::int64_t num;
    std::int64_t den;
    std::string coeff;
};
std::vector<SerializedTerm> serialize(const QSeries& a);

std::string to_string(const QSeries& a);

} // namespace qsid
