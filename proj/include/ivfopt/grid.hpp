#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ivfopt {

/// One coordinate range of an axis-aligned box. Endpoints may be infinite;
/// each end is closed unless flagged open.
struct Bound {
    double lo;
    double hi;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double x) const noexcept {
        const bool above = lo_open ? x > lo : x >= lo;
        const bool below = hi_open ? x < hi : x <= hi;
        return above && below;
    }

    friend bool operator==(const Bound&, const Bound&) = default;
};

using Box = std::vector<Bound>;

bool box_contains(const Box& box, std::span<const double> y) noexcept;

/// Sampling of a box.
///
/// `points` is the per-dimension count of the uniform lattice (0 selects
/// default_points(dim)). With `focal` set and a focal point supplied, points
/// at distance 10^-k (k = 1..focal_levels) from it are added along every
/// coordinate axis and, for dim > 1, along the diagonals. Infinite box ends
/// are clipped to `clip` units from the focal point (or from the finite end).
struct GridSpec {
    std::size_t points = 0;
    bool focal = true;
    int focal_levels = 8;
    double clip = 10.0;
};

/// 2001 in 1D, 101 in 2D, 21 in 3D, 7 beyond.
std::size_t default_points(std::size_t dim) noexcept;

/// Finite point set, stored row-major.
class Grid {
public:
    Grid(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::span<const double> point(std::size_t i) const noexcept { return {coords_.data() + i * dim_, dim_}; }
    const std::vector<double>& coords() const noexcept { return coords_; }

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Uniform lattice over `box` plus optional focal refinement around `focal`.
/// Lattice nodes within 1e-12 (relative) of a focal coordinate are moved onto it.
/// Points outside the box (open ends, refinement overshoot) are dropped; the
/// result is sorted lexicographically without duplicates.
Grid make_grid(const Box& box, const GridSpec& spec, std::span<const double> focal = {});

/// Decreasing radii 10^-1 .. 10^-levels.
std::vector<double> default_radii(int levels = 8);

/// Offsets of norm `r` used to probe a neighbourhood: +-r e_i and, for
/// dim > 1, the 2^dim diagonals scaled to norm r. Row-major.
std::vector<double> sphere_offsets(std::size_t dim, double r);

}  // namespace ivfopt
