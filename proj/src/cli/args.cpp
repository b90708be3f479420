#include "cli/args.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "ivfopt/corpus.hpp"
#include "ivfopt/errors.hpp"

namespace ivfopt::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_float(std::string_view s) {
    s = trim(s);
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw UsageError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

Interval parse_pair(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw UsageError("expected 'lo,hi', got '" + std::string(text) + "'");
    return Interval(parse_float(parts[0]), parse_float(parts[1]));
}

}  // namespace

Ivf load_ivf(std::string_view spec) {
    constexpr std::string_view prefix = "corpus:";
    if (spec.starts_with(prefix)) return corpus_get(spec.substr(prefix.size()));
    std::ifstream in{std::string(spec)};
    if (!in) throw UsageError("cannot open '" + std::string(spec) + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return Ivf::parse(text.str());
}

std::vector<double> parse_floats(std::string_view text) {
    std::vector<double> out;
    for (const auto part : split(text, ',')) out.push_back(parse_float(part));
    return out;
}

IntervalVector parse_intervals(std::string_view text) {
    std::vector<Interval> comps;
    for (const auto part : split(text, ';')) comps.push_back(parse_pair(part));
    return IntervalVector(std::move(comps));
}

Box parse_box(std::string_view text) {
    Box box;
    for (const auto part : split(text, ';')) {
        const auto ends = split(part, ',');
        if (ends.size() != 2) throw UsageError("expected 'lo,hi' per axis, got '" + std::string(part) + "'");
        const double lo = parse_float(ends[0]);
        const double hi = parse_float(ends[1]);
        if (!(lo <= hi)) throw UsageError("empty axis range '" + std::string(part) + "'");
        box.push_back({lo, hi});
    }
    return box;
}

GridSpec grid_spec(std::optional<std::size_t> grid, bool no_focal) {
    GridSpec spec;
    spec.focal = !no_focal;
    if (grid) {
        spec.points = *grid;
    } else if (const char* env = std::getenv("IVFOPT_GRID"); env && *env) {
        const std::string_view s(env);
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc() || ptr != s.data() + s.size() || n < 2) {
            throw UsageError("IVFOPT_GRID must be an integer >= 2, got '" + std::string(s) + "'");
        }
        spec.points = n;
    }
    if (grid && *grid < 2) throw UsageError("--grid must be at least 2");
    return spec;
}

std::vector<double> point_for(const Ivf& f, std::string_view text) {
    std::vector<double> u = parse_floats(text);
    if (u.size() != f.dim()) {
        throw DimensionError("point has " + std::to_string(u.size()) + " coordinates, '" + f.name() + "' has dimension " +
                             std::to_string(f.dim()));
    }
    return u;
}

std::vector<SupportRow> support_rows(const Ivf& f, double u, const WeakCandidate& cand, std::size_t points) {
    if (f.dim() != 1) throw DimensionError("plot data is only available in one dimension");
    GridSpec spec;
    spec.points = points;
    spec.focal = false;
    std::vector<double> ys = make_grid(f.domain(), spec).coords();
    const std::span<const double> uu(&u, 1);
    f.eval(uu);
    // The interior node closest to u is moved onto u so that H(u) = f(u) shows
    // up in the data. Domain ends stay put.
    if (ys.size() > 2) {
        const auto nearest = std::min_element(ys.begin() + 1, ys.end() - 1, [u](double a, double b) {
            return std::abs(a - u) < std::abs(b - u);
        });
        if (u > ys.front() && u < ys.back()) *nearest = u;
    }
    std::vector<SupportRow> rows;
    rows.reserve(ys.size());
    for (const double y : ys) {
        const std::span<const double> yy(&y, 1);
        rows.push_back({y, f.eval(yy), support_ivf_eval(f, uu, cand, yy)});
    }
    return rows;
}

}  // namespace ivfopt::cli
