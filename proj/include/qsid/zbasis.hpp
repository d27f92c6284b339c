#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsid/qseries.hpp"
#include "qsid/report.hpp"

namespace qsid {

/**
 * Index sequence n_1 <= n_2 <= ... <= n_k of a Z-operator monomial, each n_p a
 * negative half-integer. Stored as twice the index: halves[p] = 2 n_p <= -1.
 */
struct BasisSequence {
    std::vector<int> halves;

    /// Total q-degree l * sum(-2 n_p).
    std::int64_t weight(int l) const;
    std::string to_string() const;
};

/// How the tail bound n_{k - sigma(s)} <= -1 picks sigma(s) once s exceeds r.
enum class SigmaRule {
    Printed,  ///< sigma(s) = r + 1 - s
    Reflected ///< sigma(s) = l - s
};

/// Which entries the even-level integrality implication looks at.
enum class ParityWindow {
    RPlusOne, ///< n_p .. n_{p+r}
    R         ///< n_p .. n_{p+r-1}
};

/// Comparison of n_p - n_{p+w-1} against -1 that triggers the implication.
enum class ParityTrigger { Less, LessEqual, Greater, GreaterEqual };

/// What the triggered window sum must satisfy.
enum class ParityTarget {
    Integral, ///< sum of the window's n in Z
    MatchesS  ///< sum of the window's -2n congruent to s mod 2
};

struct ParityClause {
    ParityWindow window;
    ParityTrigger trigger;
    ParityTarget target;

    bool operator==(const ParityClause&) const = default;
};

/// One reading of the basis difference conditions. The parity clause only
/// applies at even level.
struct ConditionVariant {
    SigmaRule sigma = SigmaRule::Reflected;
    std::optional<ParityClause> parity;

    std::string id() const;
    bool operator==(const ConditionVariant&) const = default;

    /// The reading as printed: literal sigma, and for even l the literal implication.
    static ConditionVariant printed(int l);
    /// Reflected sigma; for even l the window-of-r parity condition keyed to s.
    static ConditionVariant canonical(int l);
};

/// All readings considered for level l, printed reading first.
std::vector<ConditionVariant> condition_variants(int l);
ConditionVariant parse_condition_variant(int l, const std::string& id);

/**
 * A variant specialised to one (l, s): sigma as a number (nullopt when the tail
 * index never lands inside a sequence) and the trigger reduced to the spreads
 * that can actually occur. Two variants with equal EffectiveConditions accept
 * exactly the same sequences.
 */
struct EffectiveConditions {
    int l = 0;
    int s = 0;
    int r = 0;
    std::optional<int> sigma;
    struct Parity {
        int window = 0;
        int min_spread = 0; ///< triggers when min_spread <= 2(n_{p+w-1} - n_p) <= max_spread
        int max_spread = 0;
        int residue = 0;    ///< required parity of sum(-2 n) over the window
        bool operator==(const Parity&) const = default;
    };
    std::optional<Parity> parity;

    bool operator==(const EffectiveConditions&) const = default;
};

EffectiveConditions resolve(const ConditionVariant& variant, int l, int s);

bool satisfies(const BasisSequence& seq, const EffectiveConditions& cond);

/// Largest q-degree the enumerator accepts for level l.
inline std::int64_t zbasis_degree_guard(int l) { return 60 * static_cast<std::int64_t>(l); }

/// Calls visit for every admissible sequence of q-degree <= deg_max.
void for_each_basis_sequence(int l, int s, const ConditionVariant& variant,
                             std::int64_t deg_max,
                             const std::function<void(const BasisSequence&)>& visit);

/// sum over admissible sequences of q^{l sum(-2 n_p)}, known to order deg_max + 1.
QSeries zbasis_series(int l, int s, const ConditionVariant& variant, std::int64_t deg_max);

struct VariantTrial {
    ConditionVariant variant;
    VerificationReport report;
};

struct VariantSelection {
    enum class Status { Unique, Ambiguous, NoMatch };

    int l = 0;
    int s = 0;
    std::int64_t deg_max = 0;
    Status status = Status::NoMatch;
    std::optional<ConditionVariant> selected;
    /// One trial per distinct EffectiveConditions, in condition_variants() order.
    std::vector<VariantTrial> trials;
    /// Variants (one per distinct behaviour) whose series matched.
    std::vector<ConditionVariant> matching;
};

std::string to_string(VariantSelection::Status status);

/// Compares every reading against the vacuum-space product up to deg_max.
VariantSelection select_condition_variant(int l, int s, std::int64_t deg_max);

} // namespace qsid
