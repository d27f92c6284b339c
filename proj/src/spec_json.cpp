#include "qsid/spec_json.hpp"

#include "qsid/errors.hpp"

namespace qsid {

namespace {

using nlohmann::json;

Rational rational_field(const json& obj, const char* key, const Rational& fallback,
                        bool required)
{
    if (!obj.contains(key)) {
        if (required) {
            throw ConfigError(std::string("missing field '") + key + "'");
        }
        return fallback;
    }
    const auto& v = obj.at(key);
    if (v.is_number_integer()) {
        return Rational(v.get<std::int64_t>());
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        const auto den = v[1].get<std::int64_t>();
        if (den == 0) {
            throw ConfigError(std::string("field '") + key + "' has zero denominator");
        }
        return Rational(v[0].get<std::int64_t>(), den);
    }
    throw ConfigError(std::string("field '") + key + "' must be [num, den] or an integer");
}

json rational_json(const Rational& r) { return json::array({r.numerator(), r.denominator()}); }

FactorFamily parse_family(const json& obj, std::size_t index)
{
    const auto where = " in families[" + std::to_string(index) + "]";
    if (!obj.is_object()) {
        throw ConfigError("family must be an object" + where);
    }
    try {
        FactorFamily f;
        f.modulus = obj.value("modulus", std::int64_t{1});
        f.residues = obj.value("residues", std::vector<std::int64_t>{0});
        f.scale = rational_field(obj, "exp_scale", 1, true);
        f.offset = rational_field(obj, "exp_offset", 0, false);
        f.sign = obj.value("sign", -1);
        f.power = obj.value("power", std::int64_t{1});
        validate(f);
        return f;
    } catch (const json::exception& e) {
        throw ConfigError(std::string(e.what()) + where);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string(e.what()) + where);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + where);
    }
}

} // namespace

ExpansionSpec parse_expansion_spec(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("spec parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("spec must be a JSON object");
    }
    std::string type = doc.value("type", std::string{});
    if (type.empty()) {
        type = doc.contains("quad") ? "theta" : "product";
    }
    try {
        if (type == "theta") {
            ThetaSpec spec;
            spec.quad = rational_field(doc, "quad", 1, true);
            spec.lin = rational_field(doc, "lin", 0, false);
            spec.constant = rational_field(doc, "const", 0, false);
            spec.alternating = doc.value("alternating", false);
            if (!(spec.quad > 0)) {
                throw ConfigError("theta spec needs quad > 0");
            }
            return spec;
        }
        if (type == "product") {
            ProductSpec spec;
            if (doc.contains("prefactor_coeff")) {
                const auto& c = doc.at("prefactor_coeff");
                spec.prefactor_coeff = c.is_string() ? Integer(c.get<std::string>())
                                                     : Integer(c.get<long>());
            }
            spec.prefactor_exp = rational_field(doc, "prefactor_exp", 0, false);
            const auto families = doc.value("families", json::array());
            if (!families.is_array()) {
                throw ConfigError("'families' must be an array");
            }
            for (std::size_t i = 0; i < families.size(); ++i) {
                spec.families.push_back(parse_family(families[i], i));
            }
            return spec;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("spec field error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        // mpz_class string constructor
        throw ConfigError(std::string("spec field error: ") + e.what());
    }
    throw ConfigError("unknown spec type '" + type + "' (expected product or theta)");
}

nlohmann::json to_json(const ProductSpec& spec)
{
    json families = json::array();
    for (const auto& f : spec.families) {
        families.push_back({{"modulus", f.modulus},
                            {"residues", f.residues},
                            {"exp_scale", rational_json(f.scale)},
                            {"exp_offset", rational_json(f.offset)},
                            {"sign", f.sign},
                            {"power", f.power}});
    }
    return {{"type", "product"},
            {"prefactor_coeff", spec.prefactor_coeff.get_str()},
            {"prefactor_exp", rational_json(spec.prefactor_exp)},
            {"families", families}};
}

nlohmann::json to_json(const ThetaSpec& spec)
{
    return {{"type", "theta"},
            {"quad", rational_json(spec.quad)},
            {"lin", rational_json(spec.lin)},
            {"const", rational_json(spec.constant)},
            {"alternating", spec.alternating}};
}

QSeries expand(const ExpansionSpec& spec, const Exponent& order)
{
    return std::visit(
        [&](const auto& s) -> QSeries {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductSpec>) {
                return expand_product(s, order);
            } else {
                return expand_theta(s, order);
            }
        },
        spec);
}

} // namespace qsid
