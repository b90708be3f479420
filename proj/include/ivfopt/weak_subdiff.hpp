#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ivfopt/grid.hpp"
#include "ivfopt/interval.hpp"
#include "ivfopt/ivf.hpp"

namespace ivfopt {

inline constexpr double kDefaultTol = 1e-9;

/// Candidate weak subgradient (G, c) with c >= 0.
struct WeakCandidate {
    WeakCandidate(IntervalVector g, double c);

    IntervalVector g;
    double c;
};

/// gH-differences f(y) gH-minus f(u) over a grid, computed once and shared by
/// every check at the same (f, u, grid).
class FocalSweep {
public:
    FocalSweep(const Ivf& f, std::span<const double> u, Grid grid);

    /// Grid from make_grid(f.domain(), spec, u).
    static FocalSweep build(const Ivf& f, std::span<const double> u, const GridSpec& spec = {});

    const Ivf& function() const noexcept { return f_; }
    std::span<const double> u() const noexcept { return u_; }
    const Grid& grid() const noexcept { return grid_; }
    const Interval& fu() const noexcept { return fu_; }
    std::size_t size() const noexcept { return dist_.size(); }
    std::size_t dim() const noexcept { return grid_.dim(); }

    /// y - u, row-major (in 1D this is t = y - u).
    const std::vector<double>& offsets() const noexcept { return off_; }
    /// Euclidean ||y - u||.
    const std::vector<double>& dist() const noexcept { return dist_; }
    const std::vector<double>& d_lo() const noexcept { return d_lo_; }
    const std::vector<double>& d_hi() const noexcept { return d_hi_; }
    /// f(y) endpoints.
    const std::vector<double>& f_lo() const noexcept { return f_lo_; }
    const std::vector<double>& f_hi() const noexcept { return f_hi_; }

    /// Smallest nonzero ||y - u|| on the grid, or +inf if there is none.
    double finest() const noexcept;

    /// The sweep restricted to points with ||y - u|| <= radius.
    FocalSweep within(double radius) const;

private:
    Ivf f_;
    std::vector<double> u_;
    Grid grid_;
    Interval fu_;
    std::vector<double> off_;
    std::vector<double> dist_;
    std::vector<double> f_lo_;
    std::vector<double> f_hi_;
    std::vector<double> d_lo_;
    std::vector<double> d_hi_;
};

/// Outcome of a grid-sampled inequality check. On failure the witness is the
/// grid point with the largest violation.
struct CheckResult {
    bool holds = true;
    std::optional<std::vector<double>> witness;
    double violation = 0.0;

    explicit operator bool() const noexcept { return holds; }
};

/// Left-hand side G^T (y-u) gH-minus [c||y-u||, c||y-u||] of the weak-subgradient inequality.
Interval weak_lhs(std::span<const double> offset, const WeakCandidate& cand);

/// For every grid y != u: weak_lhs(y-u) <= f(y) gH-minus f(u), endpoints relaxed by tol.
CheckResult member_check(const FocalSweep& sweep, const WeakCandidate& cand, double tol = kDefaultTol);
CheckResult member_check(const Ivf& f, std::span<const double> u, const WeakCandidate& cand,
                         const GridSpec& spec = {}, double tol = kDefaultTol);

/// Admissible (g_lo, g_hi) for a fixed c in 1D: the box
/// [lo_min, lo_max] x [hi_min, hi_max] intersected with g_lo <= g_hi.
///
/// Bounds are the grid values at tol = 0, moved into the tol/2-relaxed range
/// when rounding puts them outside it. They may be infinite. Emptiness is
/// decided on the tol-relaxed bounds so that it agrees with member_check at
/// the same tol.
struct Region1D {
    double lo_min;
    double lo_max;
    double hi_min;
    double hi_max;
    bool empty;
    double c;
    double u;
    /// Closest grid offset |y - u| that produced a bound (limit tightness).
    double finest;

    bool bounded() const noexcept;

    /// Ranges used for sampling: the reported bounds, with a pair that crosses
    /// by rounding collapsed to its midpoint.
    std::pair<double, double> lo_range() const noexcept;
    std::pair<double, double> hi_range() const noexcept;

    /// Vertices of the polygon, counter-clockwise; infinite bounds are clipped
    /// to +-clip first. Empty when the region is empty.
    std::vector<std::pair<double, double>> vertices(double clip = 1e6) const;

    /// Exact membership of (g_lo, g_hi) in the polygon, with slack tol.
    bool contains(double g_lo, double g_hi, double tol = 0.0) const noexcept;
};

Region1D region_1d(const FocalSweep& sweep, double c, double tol = kDefaultTol);
Region1D region_1d(const Ivf& f, double u, double c, const GridSpec& spec = {}, double tol = kDefaultTol);

/// H(y) = f(u) + G^T (y-u) gH-minus c||y-u||.
Interval support_ivf_eval(const Ivf& f, std::span<const double> u, const WeakCandidate& cand,
                          std::span<const double> y);

/// H(y) <= f(y) at every grid point and H(u) = f(u).
CheckResult support_check(const FocalSweep& sweep, const WeakCandidate& cand, double tol = kDefaultTol);

struct FrechetLowerResult {
    bool holds = false;
    /// Endpoint-wise infimum of the quotient on each radius shell.
    std::vector<Interval> shell_inf;
    std::vector<double> radii;
    /// Largest r such that this and every smaller probed shell is >= -tol; 0 if none.
    double certified_radius = 0.0;
};

/// Liminf test: on each shell ||y-u|| = r, the infimum of
/// (1/r) * ((f(y) gH-minus f(u)) gH-minus G^T (y-u)); holds iff the last two
/// shells are >= -tol in both endpoints.
FrechetLowerResult frechet_lower_member_check(const Ivf& f, std::span<const double> u, const IntervalVector& g,
                                              std::span<const double> radii, double tol = 1e-6);

struct FrechetWeakResult {
    WeakCandidate candidate;
    double radius;
};

/// (G, eps) from a certified Frechet lower subgradient, checked by
/// member_check on the certified ball. Throws PreconditionError if G is not
/// certified or eps < 0, TheoremViolation if the membership check fails.
FrechetWeakResult weak_from_frechet(const Ivf& f, std::span<const double> u, const IntervalVector& g, double eps,
                                    const GridSpec& spec = {}, std::span<const double> radii = {},
                                    double tol = kDefaultTol);

struct LipschitzReport {
    std::optional<double> local_l;
    std::optional<double> global_l;
    /// (p, Q) with -p||y|| + Q <= f(y).
    std::optional<std::pair<double, Interval>> certificate;
    /// Largest ratio max(0, -d_lo/||y-u||, -d_hi/||y-u||) over the whole grid.
    double sampled_max = 0.0;
    /// Same ratio restricted to ||y-u|| >= 10^-k, k = 1..focal_levels.
    std::vector<double> shell_max;
    /// The ratio keeps growing as the shells shrink (no finite bound in the limit).
    bool divergent = false;
};

/// Lower-Lipschitz constants at u. The sampled maximum becomes global_l unless
/// the shell sequence diverges, in which case all three fields are empty.
LipschitzReport lower_lipschitz_estimate(const FocalSweep& sweep);
LipschitzReport lower_lipschitz_estimate(const Ivf& f, std::span<const double> u, const GridSpec& spec = {});

/// True when q grows without bound along the shells: q_K > 1 and q_K >= 3 q_{K-2}.
bool shells_diverge(std::span<const double> q) noexcept;

struct EquivalenceReport {
    bool weak_subdiff_nonempty = false;
    bool lower_lipschitz = false;
    bool certificate_exists = false;
    LipschitzReport lipschitz;
    /// 1D: smallest c with a nonempty region, and its value on each shell.
    std::optional<double> c_min;
    std::vector<double> c_min_shells;
    std::vector<std::string> caveats;

    bool agree() const noexcept {
        return weak_subdiff_nonempty == lower_lipschitz && lower_lipschitz == certificate_exists;
    }
};

/// The three conditions: (a) nonempty weak subdifferential, (b) gH-lower
/// Lipschitz, (c) an affine minorant certificate, each computed separately.
EquivalenceReport equivalence_report(const Ivf& f, std::span<const double> u, const GridSpec& spec = {},
                                     std::span<const double> c_probe = {}, double tol = kDefaultTol);

/// {0, 0.25, 0.5, 1, 2}.
std::vector<double> default_c_list();

}  // namespace ivfopt
