#include "qsid/identities.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qsid/partitions.hpp"
#include "qsid/zbasis.hpp"

namespace qsid {

using nlohmann::json;

UnknownIdentityError::UnknownIdentityError(const std::string& name, std::vector<std::string> known)
    : ParameterError([&] {
          std::string msg = "unknown identity '" + name + "'; known identities:";
          for (const auto& k : known) {
              msg += " " + k;
          }
          return msg;
      }()),
      known_(std::move(known))
{
}

namespace {

const char* param_name(Param p)
{
    switch (p) {
    case Param::L:
        return "l";
    case Param::S:
        return "s";
    case Param::R:
        return "r";
    case Param::Reading:
        return "reading";
    }
    return "?";
}

int get(const std::optional<int>& v, const std::string& name, const char* what)
{
    if (!v) {
        throw ParameterError(name + " requires parameter " + what);
    }
    return *v;
}

SeriesParams series_params(const CaseParams& p)
{
    return SeriesParams{p.l, p.s, p.reading};
}

bool integral(const Exponent& e) { return e.denominator() == 1; }

void require_integral(const std::string& name, const Exponent& order)
{
    if (!integral(order)) {
        throw ParameterError(name + " requires an integral order");
    }
}

KappaLLReading parse_kappa_reading(const std::string& id)
{
    if (id.empty() || id == "scaled") {
        return KappaLLReading::ScaledByL;
    }
    if (id == "printed") {
        return KappaLLReading::Printed;
    }
    throw ParameterError("unknown reading '" + id + "' (expected scaled or printed)");
}

// Domain predicates.

void odd_l(const std::string& name, const CaseParams& p)
{
    const auto l = get(p.l, name, "l");
    if (l < 3 || l % 2 == 0) {
        throw ParameterError(name + " requires odd l ≥ 3");
    }
}

void even_l(const std::string& name, const CaseParams& p)
{
    const auto l = get(p.l, name, "l");
    if (l < 2 || l % 2 != 0) {
        throw ParameterError(name + " requires even l ≥ 2");
    }
}

void chain_l(const std::string& name, const CaseParams& p)
{
    const auto l = get(p.l, name, "l");
    if (l < 2 || l > 8) {
        throw ParameterError(name + " requires 2 ≤ l ≤ 8");
    }
}

void level_and_s(const std::string& name, const CaseParams& p, int min_l)
{
    const auto l = get(p.l, name, "l");
    const auto s = get(p.s, name, "s");
    if (l < min_l) {
        throw ParameterError(name + " requires l ≥ " + std::to_string(min_l));
    }
    if (s < 0 || s > l) {
        throw ParameterError(name + " requires 0 ≤ s ≤ l");
    }
}

QSeries closed_form(const CaseParams& p, const Exponent& t)
{
    return named_series(*p.l % 2 == 0 ? "eq84_rhs" : "eq85_rhs", series_params(p), t);
}

std::vector<IdentityCase> builtin_cases()
{
    std::vector<IdentityCase> cs;
    const auto named = [](const std::string& series) -> SideBuilder {
        return [series](const CaseParams& p, const Exponent& t) {
            return named_series(series, series_params(p), t);
        };
    };

    cs.push_back({"schur", "Schur's product identity", {}, nullptr, named("schur_lhs"),
                  named("schur_rhs"), nullptr, nullptr, 0});

    cs.push_back({"thm11", "odd-level product = sum of residue products",
                  {Param::L},
                  [](const CaseParams& p) { odd_l("thm11", p); },
                  named("thm11_lhs"), named("thm11_rhs"), nullptr, nullptr, 0});

    cs.push_back({"thm11_schur", "odd-level product at l = 3 against Schur's product", {}, nullptr,
                  [](const CaseParams&, const Exponent& t) {
                      return named_series("thm11_lhs", SeriesParams{3, std::nullopt, ""}, t);
                  },
                  named("schur_lhs"), nullptr, nullptr, 0});

    cs.push_back({"thm12", "A_l(n) = sum_s B_{l,s}(n) by counting",
                  {Param::L},
                  [](const CaseParams& p) { odd_l("thm12", p); },
                  nullptr, nullptr,
                  [](const CaseParams& p, const Exponent& t) {
                      return verify_thm12(*p.l, static_cast<int>(t.numerator()) - 1);
                  },
                  [](const CaseParams&, const Exponent& t) {
                      require_integral("thm12", t);
                      if (t > 5001) {
                          throw ParameterError("thm12 counts at most n = 5000");
                      }
                  },
                  0});

    for (const auto* form : {"thm13a", "thm13b"}) {
        const std::string name = form;
        cs.push_back({name, "even-level product = residue products",
                      {Param::L, Param::Reading},
                      [name](const CaseParams& p) {
                          even_l(name, p);
                          parse_even_reading(p.reading);
                      },
                      named(name + "_lhs"), named(name + "_rhs"), nullptr, nullptr, 0});
    }

    // The second even-level form is the first under q -> q^2.
    for (const auto* side : {"lhs", "rhs"}) {
        const std::string s = side;
        const std::string name = "thm13_q2_" + s;
        std::vector<Param> accepts{Param::L};
        if (s == "rhs") {
            accepts.push_back(Param::Reading);
        }
        cs.push_back({name, "even-level forms related by q -> q^2", accepts,
                      [name](const CaseParams& p) {
                          even_l(name, p);
                          parse_even_reading(p.reading);
                      },
                      [s](const CaseParams& p, const Exponent& t) {
                          return substitute_power(
                              named_series("thm13a_" + s, series_params(p), t / 2), 2);
                      },
                      named("thm13b_" + s), nullptr, nullptr, 0});
    }

    cs.push_back({"gauss", "Gauss's theta sum against its product", {}, nullptr, named("gauss_lhs"),
                  named("gauss_rhs"), nullptr, nullptr, 0});

    cs.push_back({"dimq_symmetry", "dimq L(Lambda_s) = dimq L(Lambda_{l-s})",
                  {Param::L, Param::S},
                  [](const CaseParams& p) { level_and_s("dimq_symmetry", p, 1); },
                  [](const CaseParams& p, const Exponent& t) { return dimq_basic(*p.l, *p.s, t); },
                  [](const CaseParams& p, const Exponent& t) {
                      return dimq_basic(*p.l, *p.l - *p.s, t);
                  },
                  nullptr, nullptr, 0});

    cs.push_back({"kappa_ll", "kappa(l, l) against its closed product",
                  {Param::L, Param::Reading},
                  [](const CaseParams& p) {
                      if (get(p.l, "kappa_ll", "l") < 2) {
                          throw ParameterError("kappa_ll requires l ≥ 2");
                      }
                      parse_kappa_reading(p.reading);
                  },
                  [](const CaseParams& p, const Exponent& t) { return kappa(*p.l, *p.l, t); },
                  [](const CaseParams& p, const Exponent& t) {
                      return kappa_l_l(*p.l, t, parse_kappa_reading(p.reading));
                  },
                  nullptr, nullptr, 0});

    cs.push_back({"kappa_quintuple", "kappa(l, r) against the quintuple product",
                  {Param::L, Param::R},
                  [](const CaseParams& p) {
                      const auto l = get(p.l, "kappa_quintuple", "l");
                      const auto r = get(p.r, "kappa_quintuple", "r");
                      if (l < 2 || r <= 0 || r >= l) {
                          throw ParameterError("kappa_quintuple requires l ≥ 2 and 0 < r < l");
                      }
                  },
                  [](const CaseParams& p, const Exponent& t) { return kappa(*p.l, *p.r, t); },
                  [](const CaseParams& p, const Exponent& t) { return kappa_product(*p.l, *p.r, t); },
                  nullptr, nullptr, 0});

    cs.push_back({"kappa_shift", "kappa(l, l+u) = q^{-u} kappa(l, l-u), u given as r",
                  {Param::L, Param::R},
                  [](const CaseParams& p) {
                      const auto l = get(p.l, "kappa_shift", "l");
                      const auto u = get(p.r, "kappa_shift", "r");
                      if (l < 2 || u < 1 || u >= l) {
                          throw ParameterError("kappa_shift requires l ≥ 2 and 1 ≤ r < l");
                      }
                  },
                  [](const CaseParams& p, const Exponent& t) {
                      return kappa_direct(*p.l, *p.l + *p.r, t);
                  },
                  [](const CaseParams& p, const Exponent& t) {
                      const Exponent u(*p.r);
                      return shift(kappa(*p.l, *p.l - *p.r, t + u), -u);
                  },
                  nullptr, nullptr, 0});

    cs.push_back({"zbasis", "Z-operator basis enumeration against the vacuum-space product",
                  {Param::L, Param::S, Param::Reading},
                  [](const CaseParams& p) {
                      level_and_s("zbasis", p, 2);
                      parse_condition_variant(*p.l, p.reading);
                  },
                  [](const CaseParams& p, const Exponent& t) {
                      return zbasis_series(*p.l, *p.s, parse_condition_variant(*p.l, p.reading),
                                           t.numerator() - 1);
                  },
                  [](const CaseParams& p, const Exponent& t) {
                      return vacuum_character(*p.l, *p.s, t);
                  },
                  nullptr,
                  [](const CaseParams& p, const Exponent& t) {
                      require_integral("zbasis", t);
                      if (t.numerator() - 1 > zbasis_degree_guard(*p.l)) {
                          throw ParameterError("zbasis order exceeds the enumeration guard " +
                                               std::to_string(zbasis_degree_guard(*p.l) + 1));
                      }
                  },
                  0});

    cs.push_back({"chain_even", "lattice sum against the even-level closed form",
                  {Param::L, Param::Reading},
                  [](const CaseParams& p) {
                      even_l("chain_even", p);
                      chain_l("chain_even", p);
                      parse_chain_reading(p.reading);
                  },
                  named("eq83"), named("eq84_rhs"), nullptr, nullptr, 0});

    cs.push_back({"chain_odd", "lattice sum against the odd-level closed form",
                  {Param::L},
                  [](const CaseParams& p) {
                      odd_l("chain_odd", p);
                      chain_l("chain_odd", p);
                  },
                  named("eq83"), named("eq85_rhs"), nullptr, nullptr, 0});

    cs.push_back({"chain_vacuum", "closed form against the vacuum-space sum",
                  {Param::L, Param::Reading},
                  [](const CaseParams& p) {
                      chain_l("chain_vacuum", p);
                      parse_chain_reading(p.reading);
                  },
                  closed_form, named("eq86_rhs"), nullptr, nullptr, 0});

    cs.push_back({"master", "lattice sum = closed form = vacuum-space sum",
                  {Param::L, Param::Reading},
                  [](const CaseParams& p) {
                      chain_l("master", p);
                      parse_chain_reading(p.reading);
                  },
                  nullptr, nullptr,
                  [](const CaseParams& p, const Exponent& t) {
                      return master_check(*p.l, t, parse_chain_reading(p.reading));
                  },
                  nullptr, 0});
    return cs;
}

Exponent order_from_json(const json& v, const std::string& where)
{
    try {
        if (v.is_number_integer()) {
            return Exponent(v.get<std::int64_t>());
        }
        if (v.is_string()) {
            return parse_exponent(v.get<std::string>());
        }
        if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
            const auto den = v[1].get<std::int64_t>();
            if (den == 0) {
                throw ConfigError(where + ": zero denominator");
            }
            return Exponent(v[0].get<std::int64_t>(), den);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": expected an integer, \"num/den\" or [num, den]");
}

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(what + ": syntax error at byte " + std::to_string(e.byte));
    }
}

std::optional<int> int_field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(where + ": '" + key + "' must be an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < -1000000 || x > 1000000) {
        throw ConfigError(where + ": '" + key + "' out of range");
    }
    return static_cast<int>(x);
}

SuiteEntry entry_from_json(const json& e, const std::string& where)
{
    if (!e.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto& [key, _] : e.items()) {
        if (key != "name" && key != "params" && key != "order" && key != "perturb") {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    if (!e.contains("name") || !e["name"].is_string()) {
        throw ConfigError(where + ": missing string 'name'");
    }
    SuiteEntry entry;
    entry.name = e["name"].get<std::string>();
    if (e.contains("params")) {
        const auto& p = e["params"];
        if (!p.is_object()) {
            throw ConfigError(where + ": 'params' must be an object");
        }
        for (const auto& [key, _] : p.items()) {
            if (key != "l" && key != "s" && key != "r" && key != "reading") {
                throw ConfigError(where + ": unknown parameter '" + key + "'");
            }
        }
        entry.params.l = int_field(p, "l", where);
        entry.params.s = int_field(p, "s", where);
        entry.params.r = int_field(p, "r", where);
        if (p.contains("reading")) {
            if (!p["reading"].is_string()) {
                throw ConfigError(where + ": 'reading' must be a string");
            }
            entry.params.reading = p["reading"].get<std::string>();
        }
    }
    if (e.contains("order")) {
        entry.order = order_from_json(e["order"], where + " order");
    }
    if (e.contains("perturb")) {
        const auto& p = e["perturb"];
        if (!p.is_object() || !p.contains("exponent")) {
            throw ConfigError(where + ": 'perturb' needs an 'exponent'");
        }
        Perturbation pert;
        pert.exponent = order_from_json(p["exponent"], where + " perturb exponent");
        if (const auto d = int_field(p, "delta", where)) {
            pert.delta = *d;
        }
        if (pert.delta == 0) {
            throw ConfigError(where + ": perturb delta must be nonzero");
        }
        entry.perturb = pert;
    }
    return entry;
}

std::vector<SuiteEntry> entries_from_json(const json& doc, const std::string& what)
{
    const json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("cases")) {
            throw ConfigError(what + ": expected a list of cases or an object with 'cases'");
        }
        list = &doc["cases"];
    }
    if (!list->is_array()) {
        throw ConfigError(what + ": 'cases' must be a list");
    }
    std::vector<SuiteEntry> out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        out.push_back(entry_from_json((*list)[i], what + " case " + std::to_string(i)));
    }
    return out;
}

} // namespace

Defaults parse_defaults(const std::string& text)
{
    const auto doc = parse_json(text, "defaults");
    if (!doc.is_object() || !doc.contains("orders") || !doc["orders"].is_object()) {
        throw ConfigError("defaults: missing 'orders' object");
    }
    Defaults d;
    for (const auto& [name, v] : doc["orders"].items()) {
        d.orders[name] = order_from_json(v, "defaults order for " + name);
    }
    if (!doc.contains("max_order")) {
        throw ConfigError("defaults: missing 'max_order'");
    }
    d.max_order = order_from_json(doc["max_order"], "defaults max_order");
    if (doc.contains("expand_order")) {
        d.expand_order = order_from_json(doc["expand_order"], "defaults expand_order");
    }
    if (doc.contains("suite")) {
        d.suite = entries_from_json(doc["suite"], "defaults suite");
    }
    return d;
}

Defaults load_defaults(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read defaults file " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return parse_defaults(os.str());
}

Registry::Registry(const Defaults& defaults) : cases_(builtin_cases()), max_order_(defaults.max_order)
{
    for (const auto& [name, _] : defaults.orders) {
        if (std::none_of(cases_.begin(), cases_.end(),
                         [&](const IdentityCase& c) { return c.name == name; })) {
            throw ConfigError("defaults: order given for unknown identity '" + name + "'");
        }
    }
    for (auto& c : cases_) {
        const auto it = defaults.orders.find(c.name);
        if (it == defaults.orders.end()) {
            throw ConfigError("defaults: no order for identity '" + c.name + "'");
        }
        c.default_order = it->second;
    }
    for (const auto& e : defaults.suite) {
        try {
            validate(e);
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("defaults suite: ") + err.what());
        }
    }
    suite_ = defaults.suite;
}

const IdentityCase& Registry::find(const std::string& name) const
{
    for (const auto& c : cases_) {
        if (c.name == name) {
            return c;
        }
    }
    throw UnknownIdentityError(name, names());
}

std::vector<std::string> Registry::names() const
{
    std::vector<std::string> out;
    for (const auto& c : cases_) {
        out.push_back(c.name);
    }
    return out;
}

void Registry::override_orders(const Exponent& order)
{
    for (auto& c : cases_) {
        c.default_order = order;
    }
}

void Registry::validate(const SuiteEntry& entry) const
{
    const auto& c = find(entry.name);
    const auto check = [&](bool given, Param p) {
        if (given && std::find(c.accepts.begin(), c.accepts.end(), p) == c.accepts.end()) {
            throw ParameterError(c.name + " takes no parameter " + param_name(p));
        }
    };
    check(entry.params.l.has_value(), Param::L);
    check(entry.params.s.has_value(), Param::S);
    check(entry.params.r.has_value(), Param::R);
    check(!entry.params.reading.empty(), Param::Reading);
    if (c.domain) {
        c.domain(entry.params);
    }
    const auto order = entry.order.value_or(c.default_order);
    if (!(order > 0)) {
        throw ParameterError(c.name + " requires a positive order");
    }
    if (order > max_order_) {
        throw ParameterError("order " + format_exponent(order) + " exceeds the cap " +
                             format_exponent(max_order_));
    }
    if (c.order_domain) {
        c.order_domain(entry.params, order);
    }
    if (entry.perturb && c.run) {
        throw ParameterError(c.name + " is not a two-sided comparison and cannot be perturbed");
    }
}

VerificationReport verify(const Registry& registry, const std::string& name,
                          const CaseParams& params, std::optional<Exponent> order,
                          const std::optional<Perturbation>& perturb)
{
    registry.validate(SuiteEntry{name, params, order, perturb});
    const auto& c = registry.find(name);
    const auto t = order.value_or(c.default_order);
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    if (c.run) {
        report = c.run(params, t);
    } else {
        const auto lhs = c.lhs(params, t);
        auto rhs = c.rhs(params, t);
        if (perturb && perturb->exponent < t) {
            rhs = rhs + QSeries::monomial(Integer(perturb->delta), perturb->exponent, t);
        }
        report = equal_up_to(lhs, rhs, t);
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.name = name;
    report.params = params;
    report.order = t;
    return report;
}

VerificationReport master_check(int l, const Exponent& order, const ChainReading& reading)
{
    if (l < 2 || l > 8) {
        throw ParameterError("master requires 2 ≤ l ≤ 8");
    }
    const SeriesParams p{l, std::nullopt, reading_id(reading)};
    const auto lattice = named_series("eq83", p, order);
    const auto closed = named_series(l % 2 == 0 ? "eq84_rhs" : "eq85_rhs", p, order);
    const auto vacuum = named_series("eq86_rhs", p, order);
    auto report = equal_up_to(lattice, closed, order);
    if (report.passed()) {
        report = equal_up_to(closed, vacuum, order);
        report.detail = report.passed() ? "lattice sum = closed form = vacuum sum"
                                        : "closed form != vacuum sum";
    } else {
        report.detail = "lattice sum != closed form";
    }
    report.name = "master";
    report.params.l = l;
    report.params.reading = reading_id(reading);
    report.order = order;
    return report;
}

std::vector<SuiteEntry> parse_suite_config(const std::string& text, const Registry& registry)
{
    auto entries = entries_from_json(parse_json(text, "suite config"), "suite config");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
            registry.validate(entries[i]);
        } catch (const UnknownIdentityError&) {
            throw;
        } catch (const std::invalid_argument& err) {
            throw ConfigError("suite config case " + std::to_string(i) + ": " + err.what());
        }
    }
    return entries;
}

std::vector<VerificationReport> run_suite(const Registry& registry,
                                          const std::vector<SuiteEntry>& entries, unsigned threads)
{
    for (const auto& e : entries) {
        registry.validate(e);
    }
    std::vector<VerificationReport> reports(entries.size());
    std::vector<std::exception_ptr> errors(entries.size());
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, entries.size())));
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (auto i = next++; i < entries.size(); i = next++) {
            try {
                const auto& e = entries[i];
                reports[i] = verify(registry, e.name, e.params, e.order, e.perturb);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    return reports;
}

} // namespace qsid
