#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsid/qseries.hpp"

namespace qsid {

/**
 * One family of linear factors prod_{n >= 1, n mod modulus in residues}
 * (1 + sign q^{scale n + offset})^power.
 */
struct FactorFamily {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> residues{0};
    Rational scale{1};
    Rational offset{0};
    int sign = -1;
    std::int64_t power = 1;

    bool keeps(std::int64_t n) const;

    /// Every n >= 1.
    static FactorFamily all(Rational scale, Rational offset, int sign, std::int64_t power);
    /// n >= 1 whose residue mod `modulus` is not in `excluded`.
    static FactorFamily excluding(std::int64_t modulus, const std::vector<std::int64_t>& excluded,
                                  Rational scale, int sign, std::int64_t power);
};

struct ProductSpec {
    Integer prefactor_coeff{1};
    Exponent prefactor_exp{0};
    std::vector<FactorFamily> families;
};

/// sum_{n in Z} (+-1)^n q^{quad n^2 + lin n + constant}
struct ThetaSpec {
    Rational quad{1};
    Rational lin{0};
    Rational constant{0};
    bool alternating = false;
};

/// Throws ParameterError on malformed families (empty residues, zero power, ...).
void validate(const FactorFamily& family);

QSeries expand_product(const ProductSpec& spec, const Exponent& order);
QSeries expand_theta(const ThetaSpec& spec, const Exponent& order);

/// kappa_q(l, r) = sum_n q^{l n^2 - r n}, 0 < r <= l.
QSeries kappa(int l, int r, const Exponent& order);

/// The same lattice sum with no range restriction on r.
QSeries kappa_direct(int l, int r, const Exponent& order);

/// Quintuple-product evaluation of kappa_q(l, r), 0 < r < l.
QSeries kappa_product(int l, int r, const Exponent& order);

/// Candidate readings of the closed form for kappa_q(l, l).
enum class KappaLLReading {
    Printed,  ///< 2 prod (1-q^{4n})^2/(1-q^{2n}), independent of l
    ScaledByL ///< 2 prod (1-q^{4ln})^2/(1-q^{2ln})
};
QSeries kappa_l_l(int l, const Exponent& order, KappaLLReading reading = KappaLLReading::ScaledByL);

/// Principally specialized dimension of the basic module L(Lambda_s), 0 <= s <= l.
QSeries dimq_basic(int l, int s, const Exponent& order);

/// Graded dimension of the vacuum space Omega_s, 0 <= s <= l.
QSeries vacuum_character(int l, int s, const Exponent& order);

/// prod_{n != 0, +-(s+1) mod l+2} 1/((1-q^{2n})(1-q^{ln})) without prefactor.
ProductSpec residue_product_spec(int l, int s, const Rational& stretch = 1);

/// q^{((l-2s)^2-1)/8} times residue_product_spec(l, s): one summand of the odd-l sum side.
QSeries odd_sum_summand(int l, int s, const Exponent& order);

/// Parenthesizations of the first numerator in the even-l identity.
enum class EvenReading {
    Scaled,   ///< exponent l(l+2)/2 (2n-1)
    DroppedL, ///< exponent (l+2)/2 (2n-1)
    Unhalved  ///< exponent l(l+2) (2n-1)
};
std::vector<EvenReading> even_readings();
std::string reading_id(EvenReading reading);
EvenReading parse_even_reading(const std::string& id);

/// Readings of the specialized-character chain. Each flag picks the printed or
/// the sign-corrected form of one link.
struct ChainReading {
    bool plus_denominator = true; ///< even-l closed form over (1+q^{ln}) instead of (1-q^{ln})
    bool negative_shift = true;   ///< vacuum sum weighted q^{-(l-s)s/2} instead of q^{+(l-s)s/2}

    static ChainReading printed() { return {false, false}; }
    static ChainReading corrected() { return {true, true}; }
    bool operator==(const ChainReading&) const = default;
};
std::vector<ChainReading> chain_readings();
std::string reading_id(const ChainReading& reading);
ChainReading parse_chain_reading(const std::string& id);

struct SeriesParams {
    std::optional<int> l;
    std::optional<int> s;
    std::string reading;
};

/// Names accepted by named_series().
std::vector<std::string> series_names();

/**
 * Closed-form and sum-side series by name:
 * schur_lhs, schur_rhs, thm11_lhs, thm11_rhs, thm13a_lhs, thm13a_rhs, thm13b_lhs,
 * thm13b_rhs, gauss_lhs, gauss_rhs, eq83, eq84_rhs, eq85_rhs, eq86_rhs.
 * Throws ParameterError naming the violated constraint.
 */
QSeries named_series(const std::string& name, const SeriesParams& params, const Exponent& order);

} // namespace qsid
