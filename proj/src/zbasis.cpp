#include "qsid/zbasis.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "qsid/errors.hpp"
#include "qsid/products.hpp"

namespace qsid {

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max();

int difference_span(int l) { return l % 2 != 0 ? (l - 1) / 2 : l / 2; }

void require_level(int l, int s)
{
    if (l < 2) {
        throw ParameterError("Z-basis requires l ≥ 2");
    }
    if (s < 0 || s > l) {
        throw ParameterError("Z-basis requires 0 ≤ s ≤ l");
    }
}

const char* window_id(ParityWindow w) { return w == ParityWindow::RPlusOne ? "r+1" : "r"; }

const char* trigger_id(ParityTrigger t)
{
    switch (t) {
    case ParityTrigger::Less:
        return "lt";
    case ParityTrigger::LessEqual:
        return "le";
    case ParityTrigger::Greater:
        return "gt";
    case ParityTrigger::GreaterEqual:
        return "ge";
    }
    return "lt";
}

const char* target_id(ParityTarget t) { return t == ParityTarget::Integral ? "int" : "s"; }

int mod2(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

// Depth-first walk over sequences, largest part first. `parts` holds -2 n_p,
// so it is non-increasing; every prefix of an admissible sequence passes the
// window checks, and the tail bound is applied when a sequence is reported.
template <typename Visit>
class Walker {
public:
    Walker(const EffectiveConditions& cond, std::int64_t budget, Visit& visit)
        : cond_(cond), budget_(budget), visit_(visit)
    {
    }

    void run() { descend(budget_, budget_); }

private:
    bool window_ok() const
    {
        const auto k = parts_.size();
        const auto r = static_cast<std::size_t>(cond_.r);
        if (r >= 1 && k > r && parts_[k - 1 - r] - parts_[k - 1] < 2) {
            return false;
        }
        if (cond_.parity) {
            const auto w = static_cast<std::size_t>(cond_.parity->window);
            if (k >= w) {
                const int spread = parts_[k - w] - parts_[k - 1];
                if (spread >= cond_.parity->min_spread && spread <= cond_.parity->max_spread) {
                    long long sum = 0;
                    for (auto i = k - w; i < k; ++i) {
                        sum += parts_[i];
                    }
                    if (mod2(sum) != cond_.parity->residue) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    bool tail_ok() const
    {
        if (!cond_.sigma) {
            return true;
        }
        const auto k = static_cast<long long>(parts_.size());
        const auto idx = k - *cond_.sigma;
        // n_{idx} <= -1  <=>  -2 n_{idx} >= 2
        return idx < 1 || idx > k || parts_[static_cast<std::size_t>(idx - 1)] >= 2;
    }

    void descend(std::int64_t left, std::int64_t cap)
    {
        if (tail_ok()) {
            visit_(parts_, budget_ - left);
        }
        for (auto m = std::min(left, cap); m >= 1; --m) {
            parts_.push_back(static_cast<int>(m));
            if (window_ok()) {
                descend(left - m, m);
            }
            parts_.pop_back();
        }
    }

    const EffectiveConditions& cond_;
    std::int64_t budget_;
    Visit& visit_;
    std::vector<int> parts_;
};

template <typename Visit>
void walk(const EffectiveConditions& cond, std::int64_t budget, Visit visit)
{
    Walker<Visit> w(cond, budget, visit);
    w.run();
}

void check_guard(int l, std::int64_t deg_max)
{
    if (deg_max < 0) {
        throw ParameterError("Z-basis degree bound must be nonnegative");
    }
    if (deg_max > zbasis_degree_guard(l)) {
        throw ParameterError("Z-basis enumeration is guarded at degree " +
                             std::to_string(zbasis_degree_guard(l)) + " for l = " +
                             std::to_string(l));
    }
}

} // namespace

std::int64_t BasisSequence::weight(int l) const
{
    std::int64_t total = 0;
    for (const auto h : halves) {
        total -= h;
    }
    return total * l;
}

std::string BasisSequence::to_string() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < halves.size(); ++i) {
        os << (i ? ", " : "") << format_exponent(Exponent(halves[i], 2));
    }
    os << ")";
    return os.str();
}

std::string ConditionVariant::id() const
{
    std::string out = sigma == SigmaRule::Printed ? "printed" : "reflected";
    if (parity) {
        out += "/";
        out += window_id(parity->window);
        out += ",";
        out += trigger_id(parity->trigger);
        out += ",";
        out += target_id(parity->target);
    }
    return out;
}

ConditionVariant ConditionVariant::printed(int l)
{
    ConditionVariant v{SigmaRule::Printed, std::nullopt};
    if (l % 2 == 0) {
        v.parity = ParityClause{ParityWindow::RPlusOne, ParityTrigger::Less, ParityTarget::Integral};
    }
    return v;
}

ConditionVariant ConditionVariant::canonical(int l)
{
    ConditionVariant v{SigmaRule::Reflected, std::nullopt};
    if (l % 2 == 0) {
        v.parity = ParityClause{ParityWindow::R, ParityTrigger::Greater, ParityTarget::MatchesS};
    }
    return v;
}

std::vector<ConditionVariant> condition_variants(int l)
{
    std::vector<ConditionVariant> out{ConditionVariant::printed(l)};
    const auto push = [&](const ConditionVariant& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
        }
    };
    for (const auto sigma : {SigmaRule::Printed, SigmaRule::Reflected}) {
        if (l % 2 != 0) {
            push({sigma, std::nullopt});
            continue;
        }
        for (const auto w : {ParityWindow::RPlusOne, ParityWindow::R}) {
            for (const auto t : {ParityTrigger::Less, ParityTrigger::LessEqual, ParityTrigger::Greater,
                                 ParityTrigger::GreaterEqual}) {
                for (const auto g : {ParityTarget::Integral, ParityTarget::MatchesS}) {
                    push({sigma, ParityClause{w, t, g}});
                }
            }
        }
        push({sigma, std::nullopt});
    }
    return out;
}

ConditionVariant parse_condition_variant(int l, const std::string& id)
{
    if (id.empty() || id == "canonical") {
        return ConditionVariant::canonical(l);
    }
    for (const auto& v : condition_variants(l)) {
        if (v.id() == id) {
            return v;
        }
    }
    throw ParameterError("unknown condition variant '" + id + "' for l = " + std::to_string(l));
}

EffectiveConditions resolve(const ConditionVariant& variant, int l, int s)
{
    require_level(l, s);
    EffectiveConditions c;
    c.l = l;
    c.s = s;
    c.r = difference_span(l);
    int sigma = s;
    if (s > c.r) {
        sigma = variant.sigma == SigmaRule::Printed ? c.r + 1 - s : l - s;
    }
    if (sigma >= 0) {
        c.sigma = sigma;
    }
    if (l % 2 == 0 && variant.parity) {
        const auto& p = *variant.parity;
        const int w = p.window == ParityWindow::RPlusOne ? c.r + 1 : c.r;
        // Spreads 2(n_{p+w-1} - n_p) that can occur in an admissible window.
        int lo = 0;
        int hi = kUnbounded;
        if (w == 1) {
            hi = 0;
        } else if (w == c.r + 1) {
            lo = 2;
        }
        // n_p - n_{p+w-1} = -spread/2 compared against -1.
        int tlo = 0;
        int thi = kUnbounded;
        switch (p.trigger) {
        case ParityTrigger::Less:
            tlo = 3;
            break;
        case ParityTrigger::LessEqual:
            tlo = 2;
            break;
        case ParityTrigger::Greater:
            thi = 1;
            break;
        case ParityTrigger::GreaterEqual:
            thi = 2;
            break;
        }
        const int a = std::max(lo, tlo);
        const int b = std::min(hi, thi);
        if (a <= b) {
            c.parity = EffectiveConditions::Parity{
                w, a, b, p.target == ParityTarget::Integral ? 0 : s % 2};
        }
    }
    return c;
}

bool satisfies(const BasisSequence& seq, const EffectiveConditions& cond)
{
    const auto& h = seq.halves;
    const auto k = h.size();
    for (std::size_t p = 0; p < k; ++p) {
        if (h[p] > -1) {
            return false;
        }
        if (p + 1 < k && h[p] > h[p + 1]) {
            return false;
        }
        const auto r = static_cast<std::size_t>(cond.r);
        if (r >= 1 && p + r < k && h[p] > h[p + r] - 2) {
            return false;
        }
        if (cond.parity) {
            const auto w = static_cast<std::size_t>(cond.parity->window);
            if (p + w <= k) {
                const int spread = h[p + w - 1] - h[p];
                if (spread >= cond.parity->min_spread && spread <= cond.parity->max_spread) {
                    long long sum = 0;
                    for (auto i = p; i < p + w; ++i) {
                        sum -= h[i];
                    }
                    if (mod2(sum) != cond.parity->residue) {
                        return false;
                    }
                }
            }
        }
    }
    if (cond.sigma) {
        const auto idx = static_cast<long long>(k) - *cond.sigma;
        if (idx >= 1 && idx <= static_cast<long long>(k) && h[static_cast<std::size_t>(idx - 1)] > -2) {
            return false;
        }
    }
    return true;
}

void for_each_basis_sequence(int l, int s, const ConditionVariant& variant,
                             std::int64_t deg_max,
                             const std::function<void(const BasisSequence&)>& visit)
{
    check_guard(l, deg_max);
    const auto cond = resolve(variant, l, s);
    BasisSequence seq;
    walk(cond, deg_max / l, [&](const std::vector<int>& parts, std::int64_t) {
        seq.halves.assign(parts.begin(), parts.end());
        for (auto& x : seq.halves) {
            x = -x;
        }
        visit(seq);
    });
}

QSeries zbasis_series(int l, int s, const ConditionVariant& variant, std::int64_t deg_max)
{
    check_guard(l, deg_max);
    const auto cond = resolve(variant, l, s);
    const auto budget = deg_max / l;
    std::vector<long long> counts(static_cast<std::size_t>(budget) + 1);
    walk(cond, budget, [&](const std::vector<int>&, std::int64_t weight) {
        ++counts[static_cast<std::size_t>(weight)];
    });
    std::vector<Term> terms;
    for (std::size_t w = 0; w < counts.size(); ++w) {
        if (counts[w] != 0) {
            terms.push_back({Exponent(static_cast<std::int64_t>(w) * l), Integer(static_cast<long>(counts[w]))});
        }
    }
    return QSeries::from_terms(terms, Exponent(deg_max + 1));
}

std::string to_string(VariantSelection::Status status)
{
    switch (status) {
    case VariantSelection::Status::Unique:
        return "unique";
    case VariantSelection::Status::Ambiguous:
        return "ambiguous";
    case VariantSelection::Status::NoMatch:
        return "no-match";
    }
    return "no-match";
}

VariantSelection select_condition_variant(int l, int s, std::int64_t deg_max)
{
    require_level(l, s);
    if (l > 5) {
        throw ParameterError("variant selection is limited to l ≤ 5");
    }
    check_guard(l, deg_max);
    VariantSelection sel;
    sel.l = l;
    sel.s = s;
    sel.deg_max = deg_max;
    const Exponent order(deg_max + 1);
    const auto target = vacuum_character(l, s, order);
    std::vector<EffectiveConditions> seen;
    for (const auto& v : condition_variants(l)) {
        const auto eff = resolve(v, l, s);
        if (std::find(seen.begin(), seen.end(), eff) != seen.end()) {
            continue;
        }
        seen.push_back(eff);
        const auto start = std::chrono::steady_clock::now();
        auto report = equal_up_to(zbasis_series(l, s, v, deg_max), target, order);
        report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report.name = "zbasis";
        report.params.l = l;
        report.params.s = s;
        report.params.reading = v.id();
        report.detail = v.id();
        if (report.passed()) {
            sel.matching.push_back(v);
        }
        sel.trials.push_back({v, std::move(report)});
    }
    if (sel.matching.empty()) {
        sel.status = VariantSelection::Status::NoMatch;
    } else {
        sel.status = sel.matching.size() == 1 ? VariantSelection::Status::Unique
                                              : VariantSelection::Status::Ambiguous;
        sel.selected = sel.matching.front();
    }
    return sel;
}

} // namespace qsid
