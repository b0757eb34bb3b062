#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace bglab {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    nlohmann::json details;
};

struct SuiteOptions {
    std::uint64_t seed = 7;
    bool deterministic = false;  // strip timings/timestamps from reports
};

struct SuiteReport {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
};

/// Criteria 1-9: the quantitative checks of the whole component.
std::vector<CriterionResult> run_battery(const SuiteOptions& opts);

/// Full suite: the battery plus the determinism criterion (a second
/// battery run whose canonical report must match the first byte for
/// byte).
SuiteReport run_acceptance(const SuiteOptions& opts);

nlohmann::json report_json(const std::vector<CriterionResult>& criteria, bool include_timing);

/// One line per criterion: "PASS  3 property3-residuals ...".
std::string format_summary(const SuiteReport& report);

}  // namespace bglab
