#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsid/qseries.hpp"
#include "qsid/report.hpp"

namespace qsid {

/// Parts scale*k for k >= 1 with k mod modulus not in `excluded`.
struct PartFamily {
    std::int64_t scale = 1;
    std::int64_t modulus = 1;
    std::vector<std::int64_t> excluded;
    bool distinct = false;

    bool allows(std::int64_t k) const;
};

/// Partitions of n - offset into parts drawn from the families. Parts from
/// different families are distinguishable even when their values coincide.
struct PartSpec {
    std::vector<PartFamily> families;
    std::int64_t offset = 0;
};

void validate(const PartSpec& spec);

/// Distinct parts, none a multiple of l.
PartSpec a_spec(int l);

/// Parts 2k and l*k with k != 0, +-(s+1) mod l+2, repetition allowed, plus the
/// constant ((l-2s)^2-1)/8.
PartSpec b_spec(int l, int s);

struct CountTable {
    int l = 0;
    std::optional<int> s;
    int n_max = 0;
    std::vector<Integer> counts; ///< index n in [0, n_max]
};

/// Counts for every n in [0, n_max] by knapsack dynamic programming.
std::vector<Integer> count_partitions(const PartSpec& spec, int n_max);

CountTable count_A(int l, int n_max);
CountTable count_B(int l, int s, int n_max);

/// Generating function sum_n counts[n] q^n + O(q^{n_max+1}).
QSeries to_series(const CountTable& table);

struct TaggedPart {
    std::size_t family;
    std::int64_t k; ///< the part's value is families[family].scale * k

    bool operator==(const TaggedPart&) const = default;
};
using TaggedPartition = std::vector<TaggedPart>;

inline constexpr int kEnumerationLimit = 60;

/**
 * Every multiset of allowed parts summing to n - offset. Each partition lists its
 * parts by descending value, ties broken by family index. n is capped at
 * kEnumerationLimit; larger requests should go through count_partitions.
 */
std::vector<TaggedPartition> enumerate_partitions(const PartSpec& spec, int n);

/// Renders as "1+2+12" for single-family specs and "2(1x4+3)+5(1)+1" otherwise.
std::string render(const PartSpec& spec, const TaggedPartition& partition);

/// A_l(n) == sum_s B_{l,s}(n) for 1 <= n <= n_max.
VerificationReport verify_thm12(int l, int n_max);

/// Columns n, A_l(n), B_{l,0}(n), ..., B_{l,(l-1)/2}(n) for n = 1..n_max.
std::string table_csv(int l, int n_max);

/// "n,count" rows for n = 0..n_max, with header.
std::string count_csv(const CountTable& table);
std::vector<Integer> parse_count_csv(const std::string& text);

} // namespace qsid
