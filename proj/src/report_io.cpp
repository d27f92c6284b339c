#include "qsid/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace qsid {

using nlohmann::json;

std::string format_params(const CaseParams& params)
{
    std::ostringstream os;
    const auto put = [&](const char* key, const std::optional<int>& v) {
        if (v) {
            os << (os.tellp() > 0 ? " " : "") << key << "=" << *v;
        }
    };
    put("l", params.l);
    put("s", params.s);
    put("r", params.r);
    if (!params.reading.empty()) {
        os << (os.tellp() > 0 ? " " : "") << "reading=" << params.reading;
    }
    return os.str();
}

json to_json(const VerificationReport& report, bool timing)
{
    json params = json::object();
    if (report.params.l) {
        params["l"] = *report.params.l;
    }
    if (report.params.s) {
        params["s"] = *report.params.s;
    }
    if (report.params.r) {
        params["r"] = *report.params.r;
    }
    if (!report.params.reading.empty()) {
        params["reading"] = report.params.reading;
    }
    json out = {
        {"name", report.name},
        {"params", params},
        {"order", format_exponent(report.order)},
        {"status", report.passed() ? "pass" : "fail"},
    };
    if (report.mismatch) {
        out["mismatch"] = {
            {"exponent", format_exponent(report.mismatch->exponent)},
            {"lhs", report.mismatch->lhs.get_str()},
            {"rhs", report.mismatch->rhs.get_str()},
        };
    } else {
        out["mismatch"] = nullptr;
    }
    if (!report.detail.empty()) {
        out["detail"] = report.detail;
    }
    if (timing) {
        out["elapsed_ms"] = report.elapsed_ms;
    }
    return out;
}

std::string report_json(const VerificationReport& report, bool timing)
{
    json out = {{"schema", kReportSchema}};
    out.update(to_json(report, timing));
    return out.dump(2) + "\n";
}

std::string suite_json(const std::vector<VerificationReport>& reports, bool timing)
{
    json list = json::array();
    for (const auto& r : reports) {
        list.push_back(to_json(r, timing));
    }
    json out = {{"schema", kReportSchema}, {"reports", list}};
    return out.dump(2) + "\n";
}

std::string summary_line(const VerificationReport& report, bool timing)
{
    std::ostringstream os;
    os << (report.passed() ? "PASS " : "FAIL ") << report.name;
    const auto params = format_params(report.params);
    if (!params.empty()) {
        os << " " << params;
    }
    os << " order=" << format_exponent(report.order);
    if (report.mismatch) {
        os << " first mismatch at q^" << format_exponent(report.mismatch->exponent)
           << ": lhs=" << report.mismatch->lhs.get_str() << " rhs=" << report.mismatch->rhs.get_str();
    }
    if (!report.detail.empty()) {
        os << " [" << report.detail << "]";
    }
    if (timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " (%.1f ms)", report.elapsed_ms);
        os << buf;
    }
    return os.str();
}

} // namespace qsid
