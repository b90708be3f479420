#include "ivfopt/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ivfopt/errors.hpp"

namespace ivfopt {

bool box_contains(const Box& box, std::span<const double> y) noexcept {
    if (y.size() != box.size()) return false;
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (!box[i].contains(y[i])) return false;
    }
    return true;
}

std::size_t default_points(std::size_t dim) noexcept {
    switch (dim) {
        case 1: return 2001;
        case 2: return 101;
        case 3: return 21;
        default: return 7;
    }
}

Grid::Grid(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw DimensionError("grid dimension must be at least 1");
    if (coords_.size() % dim_ != 0) throw DimensionError("grid coordinates are not a multiple of the dimension");
}

namespace {

// Finite sampling range of one coordinate.
std::pair<double, double> clipped(const Bound& b, double anchor, double clip) {
    double lo = b.lo;
    double hi = b.hi;
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
        lo = anchor - clip;
        hi = anchor + clip;
    } else if (!std::isfinite(lo)) {
        lo = std::min(anchor, hi) - clip;
    } else if (!std::isfinite(hi)) {
        hi = std::max(anchor, lo) + clip;
    }
    return {lo, hi};
}

std::vector<double> axis_samples(double lo, double hi, std::size_t n) {
    if (n < 2 || lo == hi) return {lo, hi};
    std::vector<double> out(n);
    const double span = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = hi;
    return out;
}

}  // namespace

Grid make_grid(const Box& box, const GridSpec& spec, std::span<const double> focal) {
    const std::size_t dim = box.size();
    if (dim == 0) throw DimensionError("box has no coordinates");
    if (!focal.empty() && focal.size() != dim) {
        throw DimensionError("focal point has " + std::to_string(focal.size()) + " coordinates, box has " +
                             std::to_string(dim));
    }
    const std::size_t n = spec.points == 0 ? default_points(dim) : std::max<std::size_t>(spec.points, 2);

    std::vector<std::vector<double>> axes(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const double anchor = focal.empty() ? 0.0 : focal[d];
        const auto [lo, hi] = clipped(box[d], anchor, spec.clip);
        axes[d] = axis_samples(lo, hi, n);
        // A lattice node that equals the focal coordinate up to rounding
        // would give a spurious offset of ~1e-17; move it onto the focal point.
        if (!focal.empty() && box[d].contains(anchor)) {
            const double eps = 1e-12 * std::max(1.0, std::abs(anchor));
            for (double& x : axes[d]) {
                if (std::abs(x - anchor) <= eps) x = anchor;
            }
        }
    }

    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    std::vector<std::vector<double>> rows;
    rows.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<double> p(dim);
        std::size_t rem = k;
        for (std::size_t d = dim; d-- > 0;) {
            p[d] = axes[d][rem % axes[d].size()];
            rem /= axes[d].size();
        }
        if (box_contains(box, p)) rows.push_back(std::move(p));
    }

    if (spec.focal && !focal.empty()) {
        std::vector<double> f(focal.begin(), focal.end());
        if (box_contains(box, f)) rows.push_back(f);
        for (int k = 1; k <= spec.focal_levels; ++k) {
            const std::vector<double> offs = sphere_offsets(dim, std::pow(10.0, -k));
            for (std::size_t o = 0; o < offs.size(); o += dim) {
                std::vector<double> p(dim);
                for (std::size_t d = 0; d < dim; ++d) p[d] = f[d] + offs[o + d];
                if (box_contains(box, p)) rows.push_back(std::move(p));
            }
        }
    }

    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (const auto& r : rows) coords.insert(coords.end(), r.begin(), r.end());
    return Grid(dim, std::move(coords));
}

std::vector<double> default_radii(int levels) {
    std::vector<double> r;
    for (int k = 1; k <= levels; ++k) r.push_back(std::pow(10.0, -k));
    return r;
}

std::vector<double> sphere_offsets(std::size_t dim, double r) {
    std::vector<double> out;
    for (std::size_t i = 0; i < dim; ++i) {
        for (const double s : {1.0, -1.0}) {
            for (std::size_t d = 0; d < dim; ++d) out.push_back(d == i ? s * r : 0.0);
        }
    }
    if (dim > 1 && dim <= 10) {
        const double a = r / std::sqrt(static_cast<double>(dim));
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
            for (std::size_t d = 0; d < dim; ++d) out.push_back(((mask >> d) & 1U) != 0 ? -a : a);
        }
    }
    return out;
}

}  // namespace ivfopt
