#include "qsid/qseries.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

#include "qsid/errors.hpp"

namespace qsid {

std::string format_exponent(const Exponent& e)
{
    return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

Exponent parse_exponent(std::string_view text)
{
    auto parse_int = [&](std::string_view part) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
            throw ConfigError("malformed exponent '" + std::string(text) + "'");
        }
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Exponent(parse_int(text));
    }
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw ConfigError("zero denominator in exponent '" + std::string(text) + "'");
    }
    return Exponent(parse_int(text.substr(0, slash)), den);
}

std::int64_t floor_of(const Rational& x)
{
    const auto n = x.numerator();
    const auto d = x.denominator();
    auto q = n / d;
    if ((n % d != 0) && (n < 0)) {
        --q;
    }
    return q;
}

namespace {

// Exponent e expressed in units of 1/d; throws if not representable.
std::int64_t scaled(const Exponent& e, std::int64_t d)
{
    if (d % e.denominator() != 0) {
        throw ParameterError("exponent " + format_exponent(e) +
                             " is not representable with denominator " + std::to_string(d));
    }
    return e.numerator() * (d / e.denominator());
}

std::int64_t common_denom(std::int64_t a, std::int64_t b) { return lcm64(a, b); }

} // namespace

QSeries::QSeries(std::int64_t denom, std::int64_t min, std::int64_t trunc,
                 std::vector<Integer> coeffs)
    : denom_(denom), min_(min), trunc_(trunc), coeffs_(std::move(coeffs))
{
    normalize();
}

void QSeries::normalize()
{
    std::size_t lead = 0;
    while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) {
        ++lead;
    }
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        min_ = trunc_;
    } else if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        min_ += static_cast<std::int64_t>(lead);
    }

    std::int64_t g = std::gcd(denom_, trunc_);
    g = std::gcd(g, min_);
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
        if (sgn(coeffs_[i]) != 0) {
            g = std::gcd(g, min_ + static_cast<std::int64_t>(i));
        }
    }
    if (g <= 1) {
        return;
    }
    std::vector<Integer> packed((coeffs_.size() + g - 1) / g);
    for (std::size_t j = 0; j < packed.size(); ++j) {
        packed[j] = std::move(coeffs_[j * static_cast<std::size_t>(g)]);
    }
    denom_ /= g;
    min_ /= g;
    trunc_ /= g;
    coeffs_ = std::move(packed);
    coeffs_.resize(static_cast<std::size_t>(trunc_ - min_));
}

QSeries QSeries::lifted(std::int64_t d) const
{
    if (d == denom_) {
        return *this;
    }
    const std::int64_t f = d / denom_;
    QSeries out;
    out.denom_ = d;
    out.min_ = min_ * f;
    out.trunc_ = trunc_ * f;
    out.coeffs_.resize(static_cast<std::size_t>(out.trunc_ - out.min_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out.coeffs_[i * static_cast<std::size_t>(f)] = coeffs_[i];
    }
    return out;
}

QSeries QSeries::monomial(const Integer& c, const Exponent& e, const Exponent& trunc,
                          std::int64_t denom)
{
    if (!(trunc > e)) {
        throw ParameterError("monomial exponent " + format_exponent(e) +
                             " must lie below the truncation " + format_exponent(trunc));
    }
    const std::int64_t d =
        denom > 0 ? denom : common_denom(e.denominator(), trunc.denominator());
    const auto me = scaled(e, d);
    const auto mt = scaled(trunc, d);
    std::vector<Integer> coeffs(static_cast<std::size_t>(mt - me));
    coeffs[0] = c;
    return QSeries(d, me, mt, std::move(coeffs));
}

QSeries QSeries::from_terms(const std::vector<Term>& terms, const Exponent& trunc)
{
    std::int64_t d = trunc.denominator();
    std::int64_t lo = 0;
    bool any = false;
    for (const auto& t : terms) {
        if (t.exponent < trunc) {
            d = common_denom(d, t.exponent.denominator());
        }
    }
    const auto mt = scaled(trunc, d);
    for (const auto& t : terms) {
        if (t.exponent < trunc) {
            const auto k = scaled(t.exponent, d);
            lo = any ? std::min(lo, k) : k;
            any = true;
        }
    }
    if (!any) {
        return QSeries(d, mt, mt, {});
    }
    std::vector<Integer> coeffs(static_cast<std::size_t>(mt - lo));
    for (const auto& t : terms) {
        if (t.exponent < trunc) {
            coeffs[static_cast<std::size_t>(scaled(t.exponent, d) - lo)] += t.coeff;
        }
    }
    return QSeries(d, lo, mt, std::move(coeffs));
}

Integer QSeries::coeff(const Exponent& e) const
{
    if (!(e < truncation())) {
        throw TruncationError("coefficient of q^" + format_exponent(e) +
                              " requested beyond truncation " + format_exponent(truncation()));
    }
    if (denom_ % e.denominator() != 0) {
        return 0;
    }
    const auto k = e.numerator() * (denom_ / e.denominator());
    if (k < min_) {
        return 0;
    }
    return coeffs_[static_cast<std::size_t>(k - min_)];
}

std::vector<Term> QSeries::terms() const
{
    std::vector<Term> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) != 0) {
            out.push_back({Exponent(min_ + static_cast<std::int64_t>(i), denom_), coeffs_[i]});
        }
    }
    return out;
}

Integer coeff(const QSeries& a, const Exponent& e) { return a.coeff(e); }

QSeries add(const QSeries& a, const QSeries& b)
{
    const auto d = common_denom(a.denom_, b.denom_);
    const auto la = a.lifted(d);
    const auto lb = b.lifted(d);
    const auto trunc = std::min(la.trunc_, lb.trunc_);
    const auto lo = std::min({la.min_, lb.min_, trunc});
    std::vector<Integer> coeffs(static_cast<std::size_t>(trunc - lo));
    for (const auto* s : {&la, &lb}) {
        for (std::size_t i = 0; i < s->coeffs_.size(); ++i) {
            const auto k = s->min_ + static_cast<std::int64_t>(i);
            if (k >= trunc) {
                break;
            }
            coeffs[static_cast<std::size_t>(k - lo)] += s->coeffs_[i];
        }
    }
    return QSeries(d, lo, trunc, std::move(coeffs));
}

QSeries scale(const QSeries& a, const Integer& c)
{
    auto coeffs = a.coeffs_;
    for (auto& x : coeffs) {
        x *= c;
    }
    return QSeries(a.denom_, a.min_, a.trunc_, std::move(coeffs));
}

QSeries negate(const QSeries& a) { return scale(a, -1); }

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, negate(b)); }

QSeries shift(const QSeries& a, const Exponent& e)
{
    const auto d = common_denom(a.denom_, e.denominator());
    auto out = a.lifted(d);
    const auto k = scaled(e, d);
    out.min_ += k;
    out.trunc_ += k;
    out.normalize();
    return out;
}

QSeries mul(const QSeries& a, const QSeries& b)
{
    const auto d = common_denom(a.denom_, b.denom_);
    const auto la = a.lifted(d);
    const auto lb = b.lifted(d);
    const auto lo = la.min_ + lb.min_;
    const auto trunc = std::min(la.trunc_ + lb.min_, lb.trunc_ + la.min_);
    const auto len = static_cast<std::size_t>(trunc - lo);

    std::vector<std::size_t> nz_b;
    for (std::size_t j = 0; j < lb.coeffs_.size(); ++j) {
        if (sgn(lb.coeffs_[j]) != 0) {
            nz_b.push_back(j);
        }
    }
    std::vector<Integer> out(len);
    for (std::size_t i = 0; i < la.coeffs_.size() && i < len; ++i) {
        if (sgn(la.coeffs_[i]) == 0) {
            continue;
        }
        const mpz_srcptr x = la.coeffs_[i].get_mpz_t();
        for (const auto j : nz_b) {
            if (i + j >= len) {
                break;
            }
            mpz_addmul(out[i + j].get_mpz_t(), x, lb.coeffs_[j].get_mpz_t());
        }
    }
    return QSeries(d, lo, trunc, std::move(out));
}

QSeries inverse(const QSeries& a)
{
    if (a.is_zero()) {
        throw NonInvertibleError("non-invertible leading term: series vanishes below q^" +
                                 format_exponent(a.truncation()));
    }
    const Integer& lead = a.coeffs_.front();
    if (abs(lead) != 1) {
        throw NonInvertibleError("non-invertible leading term: coefficient " +
                                 lead.get_str() + " is not a unit");
    }
    const auto len = a.coeffs_.size();
    std::vector<std::size_t> nz;
    for (std::size_t j = 1; j < len; ++j) {
        if (sgn(a.coeffs_[j]) != 0) {
            nz.push_back(j);
        }
    }
    std::vector<Integer> b(len);
    b[0] = lead;
    Integer acc;
    for (std::size_t k = 1; k < len; ++k) {
        acc = 0;
        for (const auto j : nz) {
            if (j > k) {
                break;
            }
            mpz_addmul(acc.get_mpz_t(), a.coeffs_[j].get_mpz_t(), b[k - j].get_mpz_t());
        }
        // lead is +-1, so dividing by it is multiplying by it
        b[k] = -lead * acc;
    }
    return QSeries(a.denom_, -a.min_, a.trunc_ - 2 * a.min_, std::move(b));
}

QSeries mul_binomial_power(const QSeries& a, int sign, const Exponent& e, std::int64_t power)
{
    if (!(e > 0)) {
        throw DivergentFactorError("divergent factor: (1 " + std::string(sign < 0 ? "-" : "+") +
                                   " q^" + format_exponent(e) + ") does not raise the order");
    }
    if (sign != 1 && sign != -1) {
        throw ParameterError("factor sign must be +1 or -1");
    }
    const auto d = common_denom(a.denom_, e.denominator());
    auto out = a.lifted(d);
    const auto step = static_cast<std::size_t>(scaled(e, d));
    auto& c = out.coeffs_;
    const auto len = c.size();
    if (power == 0 || step >= len) {
        return a;
    }
    for (std::int64_t rep = 0; rep < (power > 0 ? power : -power); ++rep) {
        if (power > 0) {
            // c(q) * (1 + sign q^e): descending so each slot reads the old value
            for (std::size_t i = len - 1; i >= step; --i) {
                if (sign > 0) {
                    c[i] += c[i - step];
                } else {
                    c[i] -= c[i - step];
                }
            }
        } else {
            // c(q) / (1 + sign q^e): b[i] = c[i] - sign b[i - e]
            for (std::size_t i = step; i < len; ++i) {
                if (sign > 0) {
                    c[i] -= c[i - step];
                } else {
                    c[i] += c[i - step];
                }
            }
        }
    }
    out.normalize();
    return out;
}

QSeries substitute_power(const QSeries& a, const Rational& u)
{
    if (!(u > 0)) {
        throw ParameterError("substitution q -> q^u needs u > 0");
    }
    const auto p = u.numerator();
    const auto d = a.denom_ * u.denominator();
    std::vector<Integer> coeffs(static_cast<std::size_t>((a.trunc_ - a.min_) * p));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        coeffs[i * static_cast<std::size_t>(p)] = a.coeffs_[i];
    }
    return QSeries(d, a.min_ * p, a.trunc_ * p, std::move(coeffs));
}

QSeries truncate(const QSeries& a, const Exponent& order)
{
    if (order > a.truncation()) {
        throw TruncationError("cannot truncate to " + format_exponent(order) +
                              ": series only known below " + format_exponent(a.truncation()));
    }
    const auto d = common_denom(a.denom_, order.denominator());
    auto out = a.lifted(d);
    const auto t = scaled(order, d);
    out.trunc_ = t;
    if (out.min_ >= t) {
        out.coeffs_.clear();
        out.min_ = t;
    } else {
        out.coeffs_.resize(static_cast<std::size_t>(t - out.min_));
    }
    out.normalize();
    return out;
}

VerificationReport equal_up_to(const QSeries& a, const QSeries& b, const Exponent& order)
{
    if (order > a.truncation() || order > b.truncation()) {
        throw TruncationError("comparison order " + format_exponent(order) +
                              " exceeds a truncation (" + format_exponent(a.truncation()) +
                              ", " + format_exponent(b.truncation()) + ")");
    }
    VerificationReport report;
    report.order = order;
    const auto d = common_denom(common_denom(a.denom_, b.denom_), order.denominator());
    const auto la = a.lifted(d);
    const auto lb = b.lifted(d);
    const auto t = scaled(order, d);
    static const Integer zero = 0;
    auto at = [](const QSeries& s, std::int64_t k) -> const Integer& {
        if (k < s.min_) {
            return zero;
        }
        return s.coeffs_[static_cast<std::size_t>(k - s.min_)];
    };
    for (auto k = std::min(la.min_, lb.min_); k < t; ++k) {
        const auto& x = at(la, k);
        const auto& y = at(lb, k);
        if (x != y) {
            report.mismatch = Mismatch{Exponent(k, d), x, y};
            break;
        }
    }
    return report;
}

std::vector<SerializedTerm> serialize(const QSeries& a)
{
    std::vector<SerializedTerm> out;
    for (const auto& t : a.terms()) {
        out.push_back({t.exponent.numerator(), t.exponent.denominator(), t.coeff.get_str()});
    }
    return out;
}

std::string to_string(const QSeries& a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a.terms()) {
        os << (first ? "" : " + ") << t.coeff.get_str() << "*q^" << format_exponent(t.exponent);
        first = false;
    }
    os << (first ? "" : " + ") << "O(q^" << format_exponent(a.truncation()) << ")";
    return os.str();
}

} // namespace qsid
