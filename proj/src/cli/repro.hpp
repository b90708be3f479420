#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cli/json_report.hpp"

namespace ivfopt::cli {

struct ReproCase {
    std::string_view id;
    std::string_view title;
    json (*run)();
    /// Expected values; only the fields present here are compared.
    std::string_view expected;
    /// Absolute tolerance per field name, applied to every number below that
    /// field. Fields not listed use "default".
    std::string_view tolerance;
};

const std::vector<ReproCase>& repro_cases();

/// Mismatch descriptions ("path: expected X, got Y"); empty when everything matches.
std::vector<std::string> compare_payload(const json& actual, const json& expected, const json& tolerance);

/// {"id", "title", "status", "mismatches", "actual"} for one case.
json run_repro_case(const ReproCase& c);

}  // namespace ivfopt::cli
