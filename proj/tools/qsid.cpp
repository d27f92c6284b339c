// qsid: expand q-series, count partitions, reproduce the A/B table and verify identities.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsid/errors.hpp"
#include "qsid/identities.hpp"
#include "qsid/partitions.hpp"
#include "qsid/report_io.hpp"
#include "qsid/spec_json.hpp"

namespace {

using namespace qsid;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
    std::string identity;
    std::optional<int> l;
    std::optional<int> s;
    std::optional<int> r;
    std::string order;
    int nmax = 15;
    std::string format = "text";
    std::string reading;
    std::string spec;
    std::string config;
    std::string output;
    bool no_timing = false;
    unsigned threads = 0;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string defaults_path()
{
    if (const char* p = std::getenv("QSID_DEFAULTS")) {
        return p;
    }
    return std::string(QSID_DATA_DIR) + "/defaults.json";
}

Registry make_registry(const Defaults& defaults)
{
    Registry registry(defaults);
    if (const char* env = std::getenv("QSID_DEFAULT_ORDER")) {
        std::int64_t value = 0;
        const std::string text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
            throw ConfigError("QSID_DEFAULT_ORDER must be a positive integer, got '" + text + "'");
        }
        registry.override_orders(Exponent(value));
    }
    return registry;
}

std::optional<Exponent> parse_order(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    try {
        return parse_exponent(text);
    } catch (const std::exception&) {
        throw ParameterError("invalid --order '" + text + "'");
    }
}

void emit(const Options& opt, const std::string& text)
{
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output);
    if (!out) {
        throw ConfigError("cannot write " + opt.output);
    }
    out << text;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed)
{
    for (const auto* f : allowed) {
        if (opt.format == f) {
            return;
        }
    }
    throw ParameterError("format '" + opt.format + "' not supported here");
}

int cmd_verify(const Options& opt)
{
    require_format(opt, {"text", "json"});
    const auto defaults = load_defaults(defaults_path());
    const auto registry = make_registry(defaults);
    CaseParams params{opt.l, opt.s, opt.r, opt.reading};
    const auto report = verify(registry, opt.identity, params, parse_order(opt.order));
    const bool timing = !opt.no_timing;
    emit(opt, opt.format == "json" ? report_json(report, timing) : summary_line(report, timing) + "\n");
    return report.passed() ? kPass : kFail;
}

int cmd_expand(const Options& opt)
{
    require_format(opt, {"text", "csv", "json"});
    if (opt.spec.empty()) {
        throw ParameterError("expand requires --spec");
    }
    const auto spec = parse_expansion_spec(read_file(opt.spec));
    auto order = parse_order(opt.order);
    if (!order) {
        order = load_defaults(defaults_path()).expand_order;
    }
    const auto series = expand(spec, *order);
    std::ostringstream os;
    if (opt.format == "json") {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : serialize(series)) {
            terms.push_back({{"exponent", std::to_string(t.num) + "/" + std::to_string(t.den)},
                             {"coeff", t.coeff}});
        }
        nlohmann::json out = {{"schema", kReportSchema},
                              {"order", format_exponent(*order)},
                              {"terms", terms}};
        os << out.dump(2) << "\n";
    } else {
        for (const auto& t : serialize(series)) {
            os << t.num << "/" << t.den << ", " << t.coeff << "\n";
        }
    }
    emit(opt, os.str());
    return kPass;
}

int cmd_table(const Options& opt)
{
    require_format(opt, {"text", "csv", "json"});
    if (!opt.l) {
        throw ParameterError("table requires --l");
    }
    const int l = *opt.l;
    if (l < 3 || l % 2 == 0) {
        throw ParameterError("table requires odd l ≥ 3");
    }
    if (opt.nmax < 1 || opt.nmax > 5000) {
        throw ParameterError("table requires 1 ≤ nmax ≤ 5000");
    }
    const auto csv = table_csv(l, opt.nmax);
    if (opt.format == "csv") {
        emit(opt, csv);
        return kPass;
    }
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        for (std::string cell; std::getline(cs, cell, ',');) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    std::ostringstream os;
    if (opt.format == "json") {
        nlohmann::json out = {{"schema", kReportSchema}, {"l", l}, {"columns", rows.front()}};
        nlohmann::json body = nlohmann::json::array();
        for (std::size_t i = 1; i < rows.size(); ++i) {
            body.push_back(rows[i]);
        }
        out["rows"] = body;
        os << out.dump(2) << "\n";
    } else {
        std::vector<std::size_t> width(rows.front().size());
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].size());
            }
        }
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "  " : "") << std::string(width[c] - row[c].size(), ' ') << row[c];
            }
            os << "\n";
        }
    }
    emit(opt, os.str());
    return kPass;
}

int cmd_count(const Options& opt)
{
    require_format(opt, {"text", "csv", "json"});
    if (!opt.l) {
        throw ParameterError("count requires --l");
    }
    if (opt.nmax < 0 || opt.nmax > 5000) {
        throw ParameterError("count requires 0 ≤ nmax ≤ 5000");
    }
    const auto table = opt.s ? count_B(*opt.l, *opt.s, opt.nmax) : count_A(*opt.l, opt.nmax);
    std::ostringstream os;
    if (opt.format == "csv") {
        os << count_csv(table);
    } else if (opt.format == "json") {
        nlohmann::json counts = nlohmann::json::array();
        for (const auto& c : table.counts) {
            counts.push_back(c.get_str());
        }
        nlohmann::json out = {{"schema", kReportSchema}, {"l", table.l}, {"counts", counts}};
        if (table.s) {
            out["s"] = *table.s;
        }
        os << out.dump(2) << "\n";
    } else {
        for (std::size_t n = 0; n < table.counts.size(); ++n) {
            os << n << " " << table.counts[n].get_str() << "\n";
        }
    }
    emit(opt, os.str());
    return kPass;
}

int cmd_suite(const Options& opt)
{
    require_format(opt, {"text", "json"});
    const auto defaults = load_defaults(defaults_path());
    const auto registry = make_registry(defaults);
    const auto entries = opt.config.empty() ? registry.default_suite()
                                            : parse_suite_config(read_file(opt.config), registry);
    const auto reports = run_suite(registry, entries, opt.threads);
    const bool timing = !opt.no_timing;
    std::ostringstream os;
    if (opt.format == "json") {
        os << suite_json(reports, timing);
    } else {
        for (const auto& r : reports) {
            os << summary_line(r, timing) << "\n";
        }
    }
    emit(opt, os.str());
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
    return ok ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"qsid: exact q-series expansion and identity verification"};
    app.require_subcommand(1, 1);
    Options opt;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--output", opt.output, "Write to this file instead of standard output");
    };

    auto* verify_cmd = app.add_subcommand("verify", "Verify one registered identity");
    verify_cmd->add_option("--identity", opt.identity, "Identity name")->required();
    verify_cmd->add_option("--l", opt.l, "Level l");
    verify_cmd->add_option("--s", opt.s, "Index s");
    verify_cmd->add_option("--r", opt.r, "Second theta index r");
    verify_cmd->add_option("--order", opt.order, "Truncation order T, e.g. 300 or 401/2");
    verify_cmd->add_option("--reading", opt.reading, "Reading or condition-variant id");
    verify_cmd->add_flag("--no-timing", opt.no_timing, "Omit elapsed time");
    add_common(verify_cmd);

    auto* expand_cmd = app.add_subcommand("expand", "Expand a product or theta spec");
    expand_cmd->add_option("--spec", opt.spec, "JSON spec file")->required();
    expand_cmd->add_option("--order", opt.order, "Truncation order T");
    add_common(expand_cmd);

    auto* table_cmd = app.add_subcommand("table", "Tabulate A_l(n) and B_{l,s}(n)");
    table_cmd->add_option("--l", opt.l, "Odd level l")->required();
    table_cmd->add_option("--nmax", opt.nmax, "Largest n");
    add_common(table_cmd);

    auto* count_cmd = app.add_subcommand("count", "Count A_l(n), or B_{l,s}(n) when --s is given");
    count_cmd->add_option("--l", opt.l, "Level l")->required();
    count_cmd->add_option("--s", opt.s, "Index s");
    count_cmd->add_option("--nmax", opt.nmax, "Largest n");
    add_common(count_cmd);

    auto* suite_cmd = app.add_subcommand("suite", "Run a suite of verifications");
    suite_cmd->add_option("--config", opt.config, "Suite config (default: the built-in suite)");
    suite_cmd->add_option("--threads", opt.threads, "Worker threads (0: hardware concurrency)");
    suite_cmd->add_flag("--no-timing", opt.no_timing, "Omit elapsed time");
    add_common(suite_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (verify_cmd->parsed()) {
            return cmd_verify(opt);
        }
        if (expand_cmd->parsed()) {
            return cmd_expand(opt);
        }
        if (table_cmd->parsed()) {
            return cmd_table(opt);
        }
        if (count_cmd->parsed()) {
            return cmd_count(opt);
        }
        return cmd_suite(opt);
    } catch (const DivergentFactorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const UnknownIdentityError& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg.substr(0, msg.find(';')) << "\nknown identities:\n";
        for (const auto& name : e.known()) {
            std::cerr << "  " << name << "\n";
        }
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
