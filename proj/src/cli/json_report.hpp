#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ivfopt/interval.hpp"
#include "ivfopt/weak_subdiff.hpp"

namespace ivfopt::cli {

using json = nlohmann::json;

/// %.12g with -0 printed as 0 and non-finite values as inf, -inf, nan.
std::string format_number(double v);

/// Finite values as numbers, the rest as the strings "inf", "-inf", "nan".
json num(double v);
json interval_json(const Interval& x);
json vector_json(std::span<const double> v);
json interval_vector_json(const IntervalVector& g);
json candidate_json(const WeakCandidate& cand);
json region_json(const Region1D& r);
json check_json(const CheckResult& r);

/// Sorted keys, two-space indent, numbers through format_number, trailing newline.
std::string canonical_dump(const json& j);

struct Report {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    json diagnostics = json::array();

    void diag(std::string_view level, std::string_view message,
              const std::optional<std::vector<double>>& witness = std::nullopt);
    std::string dump() const;
};

}  // namespace ivfopt::cli
