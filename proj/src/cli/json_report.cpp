#include "cli/json_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ivfopt::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json num(double v) {
    if (std::isfinite(v)) return v == 0.0 ? json(0.0) : json(v);
    return format_number(v);
}

json interval_json(const Interval& x) { return json::array({num(x.lo()), num(x.hi())}); }

json vector_json(std::span<const double> v) {
    json out = json::array();
    for (const double x : v) out.push_back(num(x));
    return out;
}

json interval_vector_json(const IntervalVector& g) {
    json out = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back(interval_json(g[i]));
    return out;
}

json candidate_json(const WeakCandidate& cand) {
    return {{"g", interval_vector_json(cand.g)}, {"c", num(cand.c)}};
}

json region_json(const Region1D& r) {
    return {{"c", num(r.c)},
            {"u", num(r.u)},
            {"g_lo", json::array({num(r.lo_min), num(r.lo_max)})},
            {"g_hi", json::array({num(r.hi_min), num(r.hi_max)})},
            {"empty", r.empty},
            {"finest", num(r.finest)}};
}

json check_json(const CheckResult& r) {
    json out{{"holds", r.holds}};
    if (r.witness) {
        out["witness"] = vector_json(*r.witness);
        out["violation"] = num(r.violation);
    }
    return out;
}

namespace {

void write(const json& j, std::string& out, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close_pad(2 * depth, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + json(it.key()).dump() + ": ";
                write(it.value(), out, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Short numeric arrays (intervals, points) stay on one line.
            const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const json& e) {
                return e.is_number() || e.is_string() || e.is_boolean();
            });
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    write(j[i], out, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                write(j[i], out, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_number(v) : json(format_number(v)).dump();
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    write(j, out, 0);
    out += "\n";
    return out;
}

void Report::diag(std::string_view level, std::string_view message,
                  const std::optional<std::vector<double>>& witness) {
    json d{{"level", level}, {"message", message}};
    if (witness) d["witness"] = vector_json(*witness);
    diagnostics.push_back(std::move(d));
}

std::string Report::dump() const {
    return canonical_dump(
        json{{"command", command}, {"inputs", inputs}, {"results", results}, {"diagnostics", diagnostics}});
}

}  // namespace ivfopt::cli
