#include "qsid/products.hpp"

#include <algorithm>

#include "qsid/errors.hpp"

namespace qsid {

bool FactorFamily::keeps(std::int64_t n) const
{
    const auto res = ((n % modulus) + modulus) % modulus;
    return std::find(residues.begin(), residues.end(), res) != residues.end();
}

FactorFamily FactorFamily::all(Rational scale, Rational offset, int sign, std::int64_t power)
{
    return FactorFamily{1, {0}, scale, offset, sign, power};
}

FactorFamily FactorFamily::excluding(std::int64_t modulus,
                                     const std::vector<std::int64_t>& excluded, Rational scale,
                                     int sign, std::int64_t power)
{
    FactorFamily f{modulus, {}, scale, 0, sign, power};
    for (std::int64_t res = 0; res < modulus; ++res) {
        const bool dropped = std::any_of(excluded.begin(), excluded.end(), [&](std::int64_t x) {
            return ((x % modulus) + modulus) % modulus == res;
        });
        if (!dropped) {
            f.residues.push_back(res);
        }
    }
    return f;
}

void validate(const FactorFamily& family)
{
    if (family.modulus < 1) {
        throw ParameterError("factor family modulus must be positive");
    }
    if (family.residues.empty()) {
        throw ParameterError("factor family keeps no residues");
    }
    for (const auto r : family.residues) {
        if (r < 0 || r >= family.modulus) {
            throw ParameterError("residue " + std::to_string(r) + " out of range mod " +
                                 std::to_string(family.modulus));
        }
    }
    if (family.sign != 1 && family.sign != -1) {
        throw ParameterError("factor sign must be +1 or -1");
    }
    if (family.power == 0) {
        throw ParameterError("factor power must be nonzero");
    }
}

namespace {

// Multiplies acc by every factor of the family that can affect coefficients below
// the truncation of acc.
QSeries apply_family(QSeries acc, const FactorFamily& family)
{
    validate(family);
    std::int64_t first = 1;
    while (!family.keeps(first)) {
        ++first;
    }
    const auto exponent = [&](std::int64_t n) { return family.scale * n + family.offset; };
    if (!(family.scale > 0) || !(exponent(first) > 0)) {
        throw DivergentFactorError("divergent factor: exponent " +
                                   format_exponent(exponent(first)) + " at n=" +
                                   std::to_string(first) + " does not raise the order");
    }
    const auto reach = acc.truncation() - acc.min_exponent();
    for (auto n = first; exponent(n) < reach; ++n) {
        if (family.keeps(n)) {
            acc = mul_binomial_power(acc, family.sign, exponent(n), family.power);
        }
    }
    return acc;
}

} // namespace

QSeries expand_product(const ProductSpec& spec, const Exponent& order)
{
    for (const auto& f : spec.families) {
        validate(f);
    }
    if (!(spec.prefactor_exp < order)) {
        // Nothing below the order survives, but divergent specs are still rejected.
        auto probe = QSeries::one(1);
        for (const auto& f : spec.families) {
            probe = apply_family(probe, f);
        }
        return QSeries::zero(order);
    }
    auto acc = QSeries::monomial(spec.prefactor_coeff, spec.prefactor_exp, order);
    for (const auto& f : spec.families) {
        acc = apply_family(std::move(acc), f);
    }
    return acc;
}

QSeries expand_theta(const ThetaSpec& spec, const Exponent& order)
{
    if (!(spec.quad > 0)) {
        throw ParameterError("theta sum needs a positive quadratic coefficient");
    }
    const auto exponent = [&](std::int64_t n) {
        return spec.quad * n * n + spec.lin * n + spec.constant;
    };
    const auto weight = [&](std::int64_t n) -> long { return spec.alternating && (n % 2 != 0) ? -1 : 1; };
    const auto vertex = floor_of(-spec.lin / (spec.quad * 2));
    std::vector<Term> terms;
    for (auto n = vertex; exponent(n) < order; --n) {
        terms.push_back({exponent(n), Integer(weight(n))});
    }
    for (auto n = vertex + 1; exponent(n) < order; ++n) {
        terms.push_back({exponent(n), Integer(weight(n))});
    }
    return QSeries::from_terms(terms, order);
}

QSeries kappa_direct(int l, int r, const Exponent& order)
{
    if (l < 1) {
        throw ParameterError("kappa requires l ≥ 1");
    }
    return expand_theta(ThetaSpec{l, -r, 0, false}, order);
}

QSeries kappa(int l, int r, const Exponent& order)
{
    if (l < 2 || r <= 0 || r > l) {
        throw ParameterError("kappa requires l ≥ 2 and 0 < r ≤ l");
    }
    return kappa_direct(l, r, order);
}

QSeries kappa_product(int l, int r, const Exponent& order)
{
    if (l < 2 || r <= 0 || r >= l) {
        throw ParameterError("kappa_product requires l ≥ 2 and 0 < r < l (use kappa_l_l for r = l)");
    }
    // Families whose printed index starts at n-1 are shifted so n runs from 1.
    ProductSpec spec;
    spec.families = {
        FactorFamily::all(2 * l, 0, -1, 1),
        FactorFamily::all(4 * l, -2 * (l - r), -1, 1),
        FactorFamily::all(4 * l, -4 * l + 2 * (l - r), -1, 1),
        FactorFamily::all(2 * l, -l - r, -1, -1),
        FactorFamily::all(2 * l, -2 * l + l + r, -1, -1),
    };
    return expand_product(spec, order);
}

QSeries kappa_l_l(int l, const Exponent& order, KappaLLReading reading)
{
    if (l < 1) {
        throw ParameterError("kappa_l_l requires l ≥ 1");
    }
    const Rational k = reading == KappaLLReading::ScaledByL ? Rational(l) : Rational(1);
    ProductSpec spec;
    spec.prefactor_coeff = 2;
    spec.families = {
        FactorFamily::all(4 * k, 0, -1, 2),
        FactorFamily::all(2 * k, 0, -1, -1),
    };
    return expand_product(spec, order);
}

QSeries dimq_basic(int l, int s, const Exponent& order)
{
    if (l < 1 || s < 0 || s > l) {
        throw ParameterError("dimq_L requires l ≥ 1 and 0 ≤ s ≤ l");
    }
    const auto m = 2 * (l + 2);
    ProductSpec spec;
    spec.families = {
        FactorFamily::all(m, 0, -1, 1),
        FactorFamily::all(m, -2 - 2 * s, -1, 1),
        FactorFamily::all(m, -2 * l - 2 + 2 * s, -1, 1),
        FactorFamily::all(1, 0, -1, -1),
    };
    return expand_product(spec, order);
}

QSeries vacuum_character(int l, int s, const Exponent& order)
{
    if (l < 1 || s < 0 || s > l) {
        throw ParameterError("chq_omega requires l ≥ 1 and 0 ≤ s ≤ l");
    }
    const auto m = l * (l + 2);
    ProductSpec spec;
    spec.families = {
        FactorFamily::all(m, 0, -1, 1),
        FactorFamily::all(m, -l * (s + 1), -1, 1),
        FactorFamily::all(m, -l * (l - s + 1), -1, 1),
        FactorFamily::all(l, 0, -1, -1),
    };
    return expand_product(spec, order);
}

ProductSpec residue_product_spec(int l, int s, const Rational& stretch)
{
    if (l < 1 || s < 0 || s > l) {
        throw ParameterError("residue product requires l ≥ 1 and 0 ≤ s ≤ l");
    }
    const std::int64_t m = l + 2;
    const std::vector<std::int64_t> excluded{0, s + 1, m - (s + 1)};
    ProductSpec spec;
    spec.families = {
        FactorFamily::excluding(m, excluded, 2 * stretch, -1, -1),
        FactorFamily::excluding(m, excluded, l * stretch, -1, -1),
    };
    return spec;
}

QSeries odd_sum_summand(int l, int s, const Exponent& order)
{
    if (l < 3 || l % 2 == 0 || s < 0 || 2 * s > l - 1) {
        throw ParameterError("odd sum summand requires odd l ≥ 3 and 0 ≤ s ≤ (l-1)/2");
    }
    auto spec = residue_product_spec(l, s);
    spec.prefactor_exp = Exponent(((l - 2 * s) * (l - 2 * s) - 1) / 8);
    return expand_product(spec, order);
}

} // namespace qsid
