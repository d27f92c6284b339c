#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qsid/report.hpp"

namespace qsid {

inline constexpr int kReportSchema = 1;

/// Report object without the schema field. elapsed_ms is left out when timing is off.
nlohmann::json to_json(const VerificationReport& report, bool timing = true);

/// {"schema": 1, ...report}
std::string report_json(const VerificationReport& report, bool timing = true);

/// {"schema": 1, "reports": [...]}
std::string suite_json(const std::vector<VerificationReport>& reports, bool timing = true);

/// One line, e.g. "PASS thm11 l=5 order=300/1".
std::string summary_line(const VerificationReport& report, bool timing = true);

std::string format_params(const CaseParams& params);

} // namespace qsid
