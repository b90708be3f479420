#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivfopt/errors.hpp"
#include "ivfopt/grid.hpp"
#include "ivfopt/interval.hpp"
#include "ivfopt/ivf.hpp"
#include "ivfopt/weak_subdiff.hpp"

namespace ivfopt::cli {

/// Usage problem detected after option parsing (bad list, bad env value).
class UsageError : public Error {
public:
    using Error::Error;
};

/// "corpus:<name>" or a path to an IVF file.
Ivf load_ivf(std::string_view spec);

/// "1", "0.5,0.5". Accepts inf and -inf.
std::vector<double> parse_floats(std::string_view text);

/// "lo,hi" per component, components separated by ';'.
IntervalVector parse_intervals(std::string_view text);

/// "lo,hi" per axis, axes separated by ';'.
Box parse_box(std::string_view text);

/// --grid wins over IVFOPT_GRID; focal refinement unless disabled.
GridSpec grid_spec(std::optional<std::size_t> grid, bool no_focal);

/// Point of the right dimension for f, or DimensionError.
std::vector<double> point_for(const Ivf& f, std::string_view text);

struct SupportRow {
    double y;
    Interval phi;
    Interval h;
};

/// Function and support-function values on the uniform N-point grid (no
/// focal points), with the node nearest to u moved onto u. 1D only.
std::vector<SupportRow> support_rows(const Ivf& f, double u, const WeakCandidate& cand, std::size_t points);

}  // namespace ivfopt::cli
