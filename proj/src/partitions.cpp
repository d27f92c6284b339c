#include "qsid/partitions.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "qsid/errors.hpp"

namespace qsid {

bool PartFamily::allows(std::int64_t k) const
{
    if (k < 1) {
        return false;
    }
    const auto res = k % modulus;
    return std::find(excluded.begin(), excluded.end(), res) == excluded.end();
}

void validate(const PartSpec& spec)
{
    if (spec.offset < 0) {
        throw ParameterError("partition offset must be nonnegative");
    }
    for (const auto& f : spec.families) {
        if (f.scale < 1 || f.modulus < 1) {
            throw ParameterError("part family needs positive scale and modulus");
        }
        std::int64_t kept = 0;
        for (std::int64_t r = 0; r < f.modulus; ++r) {
            kept += f.allows(r == 0 ? f.modulus : r) ? 1 : 0;
        }
        if (kept == 0) {
            throw ParameterError("part family excludes every residue");
        }
    }
}

namespace {

void require_odd(int l)
{
    if (l < 3 || l % 2 == 0) {
        throw ParameterError("A_l and B_{l,s} require odd l ≥ 3");
    }
}

} // namespace

PartSpec a_spec(int l)
{
    require_odd(l);
    return PartSpec{{PartFamily{1, l, {0}, true}}, 0};
}

PartSpec b_spec(int l, int s)
{
    require_odd(l);
    if (s < 0 || 2 * s > l - 1) {
        throw ParameterError("B_{l,s} requires 0 ≤ s ≤ (l-1)/2");
    }
    const std::int64_t m = l + 2;
    const std::vector<std::int64_t> excluded{0, s + 1, m - (s + 1)};
    const std::int64_t offset = ((l - 2 * s) * (l - 2 * s) - 1) / 8;
    return PartSpec{{PartFamily{2, m, excluded, false}, PartFamily{l, m, excluded, false}}, offset};
}

std::vector<Integer> count_partitions(const PartSpec& spec, int n_max)
{
    validate(spec);
    if (n_max < 0) {
        throw ParameterError("n_max must be nonnegative");
    }
    std::vector<Integer> counts(static_cast<std::size_t>(n_max) + 1);
    if (spec.offset > n_max) {
        return counts;
    }
    const auto span = static_cast<std::int64_t>(n_max) - spec.offset;
    std::vector<Integer> dp(static_cast<std::size_t>(span) + 1);
    dp[0] = 1;
    for (const auto& f : spec.families) {
        for (std::int64_t k = 1; f.scale * k <= span; ++k) {
            if (!f.allows(k)) {
                continue;
            }
            const auto v = f.scale * k;
            if (f.distinct) {
                for (auto n = span; n >= v; --n) {
                    dp[n] += dp[n - v];
                }
            } else {
                for (auto n = v; n <= span; ++n) {
                    dp[n] += dp[n - v];
                }
            }
        }
    }
    for (std::int64_t n = 0; n <= span; ++n) {
        counts[n + spec.offset] = dp[n];
    }
    return counts;
}

CountTable count_A(int l, int n_max)
{
    return CountTable{l, std::nullopt, n_max, count_partitions(a_spec(l), n_max)};
}

CountTable count_B(int l, int s, int n_max)
{
    return CountTable{l, s, n_max, count_partitions(b_spec(l, s), n_max)};
}

QSeries to_series(const CountTable& table)
{
    std::vector<Term> terms;
    for (std::size_t n = 0; n < table.counts.size(); ++n) {
        terms.push_back({Exponent(static_cast<std::int64_t>(n)), table.counts[n]});
    }
    return QSeries::from_terms(terms, Exponent(table.n_max + 1));
}

std::vector<TaggedPartition> enumerate_partitions(const PartSpec& spec, int n)
{
    validate(spec);
    if (n > kEnumerationLimit) {
        throw ParameterError("enumeration is limited to n ≤ " + std::to_string(kEnumerationLimit) +
                             "; use count_A/count_B for larger n");
    }
    std::vector<TaggedPartition> out;
    const auto target = static_cast<std::int64_t>(n) - spec.offset;
    if (target < 0) {
        return out;
    }
    // Part kinds in canonical order: value descending, then family index.
    std::vector<TaggedPart> kinds;
    for (std::size_t fi = 0; fi < spec.families.size(); ++fi) {
        const auto& f = spec.families[fi];
        for (std::int64_t k = 1; f.scale * k <= target; ++k) {
            if (f.allows(k)) {
                kinds.push_back({fi, k});
            }
        }
    }
    const auto value = [&](const TaggedPart& p) { return spec.families[p.family].scale * p.k; };
    std::sort(kinds.begin(), kinds.end(), [&](const TaggedPart& a, const TaggedPart& b) {
        return std::make_tuple(-value(a), a.family) < std::make_tuple(-value(b), b.family);
    });

    TaggedPartition current;
    auto recurse = [&](auto& self, std::size_t from, std::int64_t left) -> void {
        if (left == 0) {
            out.push_back(current);
            return;
        }
        for (auto i = from; i < kinds.size(); ++i) {
            const auto v = value(kinds[i]);
            if (v > left) {
                continue;
            }
            current.push_back(kinds[i]);
            const bool distinct = spec.families[kinds[i].family].distinct;
            self(self, distinct ? i + 1 : i, left - v);
            current.pop_back();
        }
    };
    recurse(recurse, 0, target);
    return out;
}

std::string render(const PartSpec& spec, const TaggedPartition& partition)
{
    std::ostringstream os;
    if (spec.families.size() == 1) {
        // Single family: list the part values ascending.
        std::vector<std::int64_t> values;
        for (const auto& p : partition) {
            values.push_back(spec.families[0].scale * p.k);
        }
        std::sort(values.begin(), values.end());
        for (std::size_t i = 0; i < values.size(); ++i) {
            os << (i ? "+" : "") << values[i];
        }
    } else {
        bool first = true;
        for (std::size_t fi = 0; fi < spec.families.size(); ++fi) {
            std::vector<std::int64_t> ks;
            for (const auto& p : partition) {
                if (p.family == fi) {
                    ks.push_back(p.k);
                }
            }
            if (ks.empty()) {
                continue;
            }
            std::sort(ks.begin(), ks.end());
            os << (first ? "" : "+") << spec.families[fi].scale << "(";
            first = false;
            for (std::size_t i = 0; i < ks.size();) {
                auto j = i;
                while (j < ks.size() && ks[j] == ks[i]) {
                    ++j;
                }
                os << (i ? "+" : "") << ks[i];
                if (j - i > 1) {
                    os << "x" << (j - i);
                }
                i = j;
            }
            os << ")";
        }
        if (spec.offset != 0) {
            os << (first ? "" : "+") << spec.offset;
        }
    }
    return os.str();
}

VerificationReport verify_thm12(int l, int n_max)
{
    VerificationReport report;
    report.name = "thm12";
    report.params.l = l;
    report.order = Exponent(n_max + 1);
    const auto a = count_A(l, n_max);
    std::vector<Integer> b(static_cast<std::size_t>(n_max) + 1);
    for (int s = 0; 2 * s <= l - 1; ++s) {
        const auto bs = count_B(l, s, n_max);
        for (int n = 0; n <= n_max; ++n) {
            b[n] += bs.counts[n];
        }
    }
    for (int n = 1; n <= n_max; ++n) {
        if (a.counts[n] != b[n]) {
            report.mismatch = Mismatch{Exponent(n), a.counts[n], b[n]};
            break;
        }
    }
    return report;
}

std::string table_csv(int l, int n_max)
{
    const auto a = count_A(l, n_max);
    std::vector<CountTable> bs;
    for (int s = 0; 2 * s <= l - 1; ++s) {
        bs.push_back(count_B(l, s, n_max));
    }
    std::ostringstream os;
    os << "n,A_" << l;
    for (const auto& b : bs) {
        os << ",B_" << l << "_" << *b.s;
    }
    os << "\n";
    for (int n = 1; n <= n_max; ++n) {
        os << n << "," << a.counts[n].get_str();
        for (const auto& b : bs) {
            os << "," << b.counts[n].get_str();
        }
        os << "\n";
    }
    return os.str();
}

std::string count_csv(const CountTable& table)
{
    std::ostringstream os;
    os << "n,count\n";
    for (std::size_t n = 0; n < table.counts.size(); ++n) {
        os << n << "," << table.counts[n].get_str() << "\n";
    }
    return os.str();
}

std::vector<Integer> parse_count_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "n,count") {
        throw ConfigError("count CSV must start with the header 'n,count'");
    }
    std::vector<Integer> out;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("malformed count CSV row '" + line + "'");
        }
        if (std::stoul(line.substr(0, comma)) != out.size()) {
            throw ConfigError("count CSV rows must be consecutive from n = 0");
        }
        out.emplace_back(line.substr(comma + 1));
    }
    return out;
}

} // namespace qsid
