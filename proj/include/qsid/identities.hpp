#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsid/errors.hpp"
#include "qsid/products.hpp"
#include "qsid/qseries.hpp"
#include "qsid/report.hpp"

namespace qsid {

/// Raised for a case name the registry does not know; carries the known names.
class UnknownIdentityError : public ParameterError {
public:
    UnknownIdentityError(const std::string& name, std::vector<std::string> known);
    const std::vector<std::string>& known() const { return known_; }

private:
    std::vector<std::string> known_;
};

enum class Param { L, S, R, Reading };

using SideBuilder = std::function<QSeries(const CaseParams&, const Exponent&)>;
using CaseRunner = std::function<VerificationReport(const CaseParams&, const Exponent&)>;

struct IdentityCase {
    std::string name;
    std::string summary;
    /// Parameters the case accepts; anything else is rejected.
    std::vector<Param> accepts;
    /// Throws ParameterError when params fall outside the domain.
    std::function<void(const CaseParams&)> domain;
    SideBuilder lhs;
    SideBuilder rhs;
    /// Set for cases that are not a single lhs/rhs comparison.
    CaseRunner run;
    /// Extra order restrictions (integral orders, enumeration guards).
    std::function<void(const CaseParams&, const Exponent&)> order_domain;
    Exponent default_order{0};
};

struct Perturbation {
    Exponent exponent;
    long delta = 1;
};

struct SuiteEntry {
    std::string name;
    CaseParams params;
    std::optional<Exponent> order;
    std::optional<Perturbation> perturb;
};

/// Contents of the checked-in defaults file.
struct Defaults {
    std::map<std::string, Exponent> orders;
    Exponent max_order{0};
    /// Default truncation for ad hoc product/theta expansion.
    Exponent expand_order{20};
    std::vector<SuiteEntry> suite;
};

Defaults parse_defaults(const std::string& text);
Defaults load_defaults(const std::string& path);

class Registry {
public:
    explicit Registry(const Defaults& defaults);

    const IdentityCase& find(const std::string& name) const;
    std::vector<std::string> names() const;
    const std::vector<IdentityCase>& cases() const { return cases_; }
    const Exponent& max_order() const { return max_order_; }
    const std::vector<SuiteEntry>& default_suite() const { return suite_; }

    /// Replaces every default order (used by the QSID_DEFAULT_ORDER override).
    void override_orders(const Exponent& order);

    /// Checks name, parameters and order without building anything.
    void validate(const SuiteEntry& entry) const;

private:
    std::vector<IdentityCase> cases_;
    Exponent max_order_;
    std::vector<SuiteEntry> suite_;
};

/// Builds both sides of the case to order T (default order when unset) and compares.
VerificationReport verify(const Registry& registry, const std::string& name,
                          const CaseParams& params, std::optional<Exponent> order = std::nullopt,
                          const std::optional<Perturbation>& perturb = std::nullopt);

/// Lattice sum = closed form = vacuum-space sum, 2 <= l <= 8. `detail` names the
/// first failing link.
VerificationReport master_check(int l, const Exponent& order,
                                const ChainReading& reading = ChainReading::corrected());

std::vector<SuiteEntry> parse_suite_config(const std::string& text, const Registry& registry);

/// Validates every entry first, then runs them on up to `threads` workers.
/// Reports come back in entry order.
std::vector<VerificationReport> run_suite(const Registry& registry,
                                          const std::vector<SuiteEntry>& entries,
                                          unsigned threads = 0);

} // namespace qsid
