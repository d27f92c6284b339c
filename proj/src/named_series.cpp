#include <functional>
#include <map>

#include "qsid/errors.hpp"
#include "qsid/products.hpp"

namespace qsid {

std::vector<EvenReading> even_readings()
{
    return {EvenReading::Scaled, EvenReading::DroppedL, EvenReading::Unhalved};
}

std::string reading_id(EvenReading reading)
{
    switch (reading) {
    case EvenReading::Scaled:
        return "scaled";
    case EvenReading::DroppedL:
        return "dropped-l";
    case EvenReading::Unhalved:
        return "unhalved";
    }
    return "scaled";
}

EvenReading parse_even_reading(const std::string& id)
{
    if (id.empty()) {
        return EvenReading::Scaled;
    }
    for (const auto r : even_readings()) {
        if (reading_id(r) == id) {
            return r;
        }
    }
    throw ParameterError("unknown reading '" + id + "' (expected scaled, dropped-l or unhalved)");
}

std::vector<ChainReading> chain_readings()
{
    return {ChainReading::corrected(), {true, false}, {false, true}, ChainReading::printed()};
}

std::string reading_id(const ChainReading& reading)
{
    if (reading == ChainReading::corrected()) {
        return "corrected";
    }
    if (reading == ChainReading::printed()) {
        return "printed";
    }
    return reading.plus_denominator ? "plus-denominator" : "negative-shift";
}

ChainReading parse_chain_reading(const std::string& id)
{
    if (id.empty()) {
        return ChainReading::corrected();
    }
    for (const auto& r : chain_readings()) {
        if (reading_id(r) == id) {
            return r;
        }
    }
    throw ParameterError("unknown reading '" + id +
                         "' (expected corrected, printed, plus-denominator or negative-shift)");
}

namespace {

int require_l(const SeriesParams& p, const std::string& family)
{
    if (!p.l) {
        throw ParameterError(family + " requires parameter l");
    }
    return *p.l;
}

int require_odd_l(const SeriesParams& p, const std::string& family)
{
    const auto l = require_l(p, family);
    if (l < 3 || l % 2 == 0) {
        throw ParameterError(family + " requires odd l ≥ 3");
    }
    return l;
}

int require_even_l(const SeriesParams& p, const std::string& family)
{
    const auto l = require_l(p, family);
    if (l < 2 || l % 2 != 0) {
        throw ParameterError(family + " requires even l ≥ 2");
    }
    return l;
}

int require_chain_l(const SeriesParams& p, const std::string& family)
{
    const auto l = require_l(p, family);
    if (l < 2) {
        throw ParameterError(family + " requires l ≥ 2");
    }
    return l;
}

QSeries schur_lhs(const Exponent& order)
{
    ProductSpec spec;
    spec.families = {FactorFamily::all(6, -1, -1, -1), FactorFamily::all(6, -5, -1, -1)};
    return expand_product(spec, order);
}

QSeries schur_rhs(const Exponent& order)
{
    ProductSpec spec;
    spec.families = {FactorFamily::all(1, 0, 1, 1), FactorFamily::all(3, 0, 1, -1)};
    return expand_product(spec, order);
}

QSeries thm11_lhs(int l, const Exponent& order)
{
    ProductSpec spec;
    spec.families = {FactorFamily::all(1, 0, 1, 1), FactorFamily::all(l, 0, 1, -1)};
    return expand_product(spec, order);
}

QSeries thm11_rhs(int l, const Exponent& order)
{
    auto acc = QSeries::zero(order);
    for (int s = 0; 2 * s <= l - 1; ++s) {
        acc = acc + odd_sum_summand(l, s, order);
    }
    return acc;
}

// The even-l identity in q (stretch 1) or in q^2 (stretch 2); the second printed
// form is the first with every exponent doubled.
QSeries even_lhs(int l, int stretch, const Exponent& order)
{
    ProductSpec spec;
    spec.families = {
        FactorFamily::all(stretch, Rational(-stretch, 2), 1, 2),
        FactorFamily::all(stretch, 0, 1, -1),
        FactorFamily::all(stretch * l, 0, 1, -1),
    };
    return expand_product(spec, order);
}

QSeries even_rhs(int l, int stretch, EvenReading reading, const Exponent& order)
{
    Rational lead;
    switch (reading) {
    case EvenReading::Scaled:
        lead = Rational(l * (l + 2), 2);
        break;
    case EvenReading::DroppedL:
        lead = Rational(l + 2, 2);
        break;
    case EvenReading::Unhalved:
        lead = Rational(l * (l + 2));
        break;
    }
    lead *= stretch;
    const std::int64_t half = l / 2 + 1;
    ProductSpec first;
    first.families = {
        FactorFamily::all(2 * lead, -lead, -1, 1),
        FactorFamily::all(2 * stretch * (l + 2), -stretch * (l + 2), -1, 1),
        FactorFamily::excluding(half, {0}, 2 * stretch, -1, -1),
        FactorFamily::excluding(half, {0}, stretch * l, -1, -1),
    };
    auto acc = expand_product(first, order);
    for (int s = 0; s < l / 2; ++s) {
        auto spec = residue_product_spec(l, s, stretch);
        spec.prefactor_coeff = 2;
        spec.prefactor_exp = Exponent(stretch * (l - 2 * s) * (l - 2 * s), 8);
        acc = acc + expand_product(spec, order);
    }
    return acc;
}

QSeries gauss_lhs(const Exponent& order) { return expand_theta(ThetaSpec{2, -1, 0, false}, order); }

QSeries gauss_rhs(const Exponent& order)
{
    ProductSpec spec;
    spec.families = {FactorFamily::all(2, 0, -1, 2), FactorFamily::all(1, 0, -1, -1)};
    return expand_product(spec, order);
}

// Lowest exponent of sum_n q^{(l n^2 - r n)/2}.
Exponent half_theta_min(int l, int r)
{
    const auto f = [&](std::int64_t n) { return Exponent(l * n * n - r * n, 2); };
    const auto v = floor_of(Rational(r, 2 * l));
    return std::min(f(v), f(v + 1));
}

// Rank-l lattice sum, factored as prod_i kappa_{q^{1/2}}(l, 2i-1), over
// prod (1-q^{ln})^{l-1} (1-q^{2ln}).
QSeries lattice_character(int l, const Exponent& order)
{
    Exponent total_min = 0;
    for (int i = 1; i <= l; ++i) {
        total_min += half_theta_min(l, 2 * i - 1);
    }
    auto acc = QSeries::one(order - total_min);
    for (int i = 1; i <= l; ++i) {
        const auto r = 2 * i - 1;
        // Each factor is needed to the order that leaves the product exact below `order`.
        const auto need = order - (total_min - half_theta_min(l, r));
        const auto theta = substitute_power(kappa_direct(l, r, need * 2), Rational(1, 2));
        acc = acc * theta;
    }
    const auto reach = acc.truncation() - acc.min_exponent();
    for (std::int64_t n = 1; l * n < reach; ++n) {
        acc = mul_binomial_power(acc, -1, l * n, -(l - 1));
        if (2 * l * n < reach) {
            acc = mul_binomial_power(acc, -1, 2 * l * n, -1);
        }
    }
    return truncate(acc, order);
}

QSeries even_closed_form(int l, const ChainReading& reading, const Exponent& order)
{
    ProductSpec spec;
    spec.prefactor_exp = Exponent(-l * l, 8);
    spec.families = {
        FactorFamily::all(1, Rational(-1, 2), 1, 2),
        FactorFamily::all(l, 0, reading.plus_denominator ? 1 : -1, -1),
    };
    return expand_product(spec, order);
}

QSeries odd_closed_form(int l, const Exponent& order)
{
    ProductSpec spec;
    spec.prefactor_coeff = 2;
    spec.prefactor_exp = Exponent(-(l * l - 1), 8);
    spec.families = {
        FactorFamily::all(2 * l, -l, -1, 1),
        FactorFamily::all(2, -1, -1, -2),
    };
    return expand_product(spec, order);
}

// sum_{s=0}^{l} q^{+-(l-s)s/2} chq(Omega_s) dimq(L(Lambda_s))
QSeries vacuum_sum(int l, const ChainReading& reading, const Exponent& order)
{
    auto acc = QSeries::zero(order);
    for (int s = 0; s <= l; ++s) {
        const Exponent w((l - s) * s, 2);
        const auto sh = reading.negative_shift ? -w : w;
        const auto need = order - sh;
        if (!(need > 0)) {
            continue;
        }
        acc = acc + shift(vacuum_character(l, s, need) * dimq_basic(l, s, need), sh);
    }
    return acc;
}

using Builder = std::function<QSeries(const SeriesParams&, const Exponent&)>;

const std::map<std::string, Builder>& builders()
{
    static const std::map<std::string, Builder> table = {
        {"schur_lhs", [](const SeriesParams&, const Exponent& t) { return schur_lhs(t); }},
        {"schur_rhs", [](const SeriesParams&, const Exponent& t) { return schur_rhs(t); }},
        {"thm11_lhs",
         [](const SeriesParams& p, const Exponent& t) {
             return thm11_lhs(require_odd_l(p, "thm11"), t);
         }},
        {"thm11_rhs",
         [](const SeriesParams& p, const Exponent& t) {
             return thm11_rhs(require_odd_l(p, "thm11"), t);
         }},
        {"thm13a_lhs",
         [](const SeriesParams& p, const Exponent& t) {
             return even_lhs(require_even_l(p, "thm13"), 1, t);
         }},
        {"thm13a_rhs",
         [](const SeriesParams& p, const Exponent& t) {
             return even_rhs(require_even_l(p, "thm13"), 1, parse_even_reading(p.reading), t);
         }},
        {"thm13b_lhs",
         [](const SeriesParams& p, const Exponent& t) {
             return even_lhs(require_even_l(p, "thm13"), 2, t);
         }},
        {"thm13b_rhs",
         [](const SeriesParams& p, const Exponent& t) {
             return even_rhs(require_even_l(p, "thm13"), 2, parse_even_reading(p.reading), t);
         }},
        {"gauss_lhs", [](const SeriesParams&, const Exponent& t) { return gauss_lhs(t); }},
        {"gauss_rhs", [](const SeriesParams&, const Exponent& t) { return gauss_rhs(t); }},
        {"eq83",
         [](const SeriesParams& p, const Exponent& t) {
             return lattice_character(require_chain_l(p, "eq83"), t);
         }},
        {"eq84_rhs",
         [](const SeriesParams& p, const Exponent& t) {
             return even_closed_form(require_even_l(p, "eq84"), parse_chain_reading(p.reading), t);
         }},
        {"eq85_rhs",
         [](const SeriesParams& p, const Exponent& t) {
             return odd_closed_form(require_odd_l(p, "eq85"), t);
         }},
        {"eq86_rhs",
         [](const SeriesParams& p, const Exponent& t) {
             return vacuum_sum(require_chain_l(p, "eq86"), parse_chain_reading(p.reading), t);
         }},
    };
    return table;
}

} // namespace

std::vector<std::string> series_names()
{
    std::vector<std::string> out;
    for (const auto& [name, _] : builders()) {
        out.push_back(name);
    }
    return out;
}

QSeries named_series(const std::string& name, const SeriesParams& params, const Exponent& order)
{
    const auto& table = builders();
    const auto it = table.find(name);
    if (it == table.end()) {
        throw ParameterError("unknown series '" + name + "'");
    }
    return it->second(params, order);
}

} // namespace qsid
