#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ivfopt/grid.hpp"
#include "ivfopt/interval.hpp"
#include "ivfopt/ivf.hpp"
#include "ivfopt/weak_subdiff.hpp"

namespace ivfopt {

/// f(u) <= f(y) for every grid y. Witness: the y with the largest violation.
CheckResult weak_efficient_check(const Ivf& f, std::span<const double> u, const GridSpec& spec = {},
                                 double tol = kDefaultTol);

/// No grid y with f(y) strictly dominating f(u): f(y) <= f(u) in both
/// endpoints (exact) and below by more than tol in one. An endpoint that
/// exceeds f(u) by less than tol still blocks dominance, since near u such
/// gaps are real. Witness: the most strictly dominating y.
CheckResult efficient_check(const Ivf& f, std::span<const double> u, const GridSpec& spec = {},
                            double tol = kDefaultTol);

struct EfficiencyVerdict {
    CheckResult weak;
    CheckResult efficient;
};

/// Both conditions, computed independently.
EfficiencyVerdict efficiency(const Ivf& f, std::span<const double> u, const GridSpec& spec = {},
                             double tol = kDefaultTol);

/// y -> f2(y) gH-minus f1(y).
inline Ivf gh_diff_ivf(const Ivf& f1, const Ivf& f2) { return gh_diff(f2, f1); }

/// y -> f1(y) + f2(y).
inline Ivf sum_ivf(const Ivf& f1, const Ivf& f2) { return sum(f1, f2); }

using Point2 = std::pair<double, double>;

struct SumRuleWitness {
    /// Candidate (G, c) with G = [g_lo, g_hi].
    Interval g;
    double c;
    /// Split (G1, c1) + (G2, c2) when the candidate comes from the sum of the parts.
    std::optional<WeakCandidate> part1;
    std::optional<WeakCandidate> part2;
    bool member_of_part1 = false;
    bool member_of_part2 = false;
    bool member_of_sum = false;
    /// The member_check results agree with the side of the inequality the witness was chosen for.
    bool verified = false;
};

struct SumRuleSlice {
    double c;
    Region1D region_of_sum;
    /// Vertices of the sum-of-parts set, one polygon per probed split c1 + c2 = c.
    std::vector<std::pair<double, std::vector<Point2>>> parts;
    bool parts_subset_of_sum;
    bool sum_subset_of_parts;
    bool equal;
    std::optional<SumRuleWitness> witness;
};

struct SumRuleReport {
    std::vector<SumRuleSlice> per_c;
    /// Some region was unbounded and clipped to +-clip for the vertex comparison.
    bool clipped = false;
};

/// Compares, per c, the weak subdifferential of f1 + f2 at u with the sum of
/// those of f1 and f2 (candidates added as (G1+G2, c1+c2), c1 swept over
/// `splits`+1 values in [0, c]). 1D only.
SumRuleReport sum_rule_experiment(const Ivf& f1, const Ivf& f2, double u, std::span<const double> c_list = {},
                                  const GridSpec& spec = {}, int splits = 20, double tol = kDefaultTol);

enum class WidthCondition { Equal, FirstWider, SecondWider, Mixed };

std::string_view to_string(WidthCondition w) noexcept;

struct InclusionSlice {
    double c;
    Region1D region1;
    Region1D region2;
    bool subset;
    /// (g_lo, g_hi) admissible for f1 at c but not for f2: the vertex of region1
    /// farthest outside region2 (ties within 1e-6 go to the first vertex).
    std::optional<Point2> witness;
};

struct InclusionReport {
    std::vector<InclusionSlice> per_c;
    bool overall = true;
    bool weak_eff_at_u = false;
    bool efficient_at_u = false;
    bool values_equal_at_u = false;
    WidthCondition width = WidthCondition::Mixed;
};

/// Region of f1 versus region of f2 per c, reported next to the hypotheses
/// of the difference-of-functions inclusions (weak efficiency of f2 - f1 at
/// u, f1(u) = f2(u), global width ordering). Asserts nothing. 1D only.
InclusionReport diff_inclusion_check(const Ivf& f1, const Ivf& f2, double u, std::span<const double> c_list = {},
                                     const GridSpec& spec = {}, double tol = kDefaultTol);

/// True iff A is contained in B, with slack tol on B's bounds.
bool region_subset(const Region1D& a, const Region1D& b, double tol = 1e-6);

/// G^T (y-u) gH-minus c||y-u|| <= [0,0] for all grid y in the box.
CheckResult normal_cone_member_check(const Box& box, std::span<const double> u, const WeakCandidate& cand,
                                     const GridSpec& spec = {}, double tol = kDefaultTol);

struct ZeroOptimalityResult {
    bool holds = false;
    /// (0, 0) passes member_check for f at u.
    bool in_subdiff = false;
    /// The normal-cone part of the decomposition, (0, 0), when it holds.
    std::optional<WeakCandidate> normal_cone_part;
    std::optional<std::vector<double>> witness;
};

/// (0,0) in the weak subdifferential plus the augmented normal cone of the
/// domain, decided through membership of (0,0) in the weak subdifferential.
ZeroOptimalityResult zero_optimality_check(const Ivf& f, std::span<const double> u, const GridSpec& spec = {},
                                           double tol = kDefaultTol);

struct SupFormResult {
    Interval sup;
    Interval inf;
    std::size_t evaluated = 0;
    bool weak_efficient = false;
    /// u lies on the boundary of the domain; the identity is not guaranteed there.
    bool boundary_point = false;
};

/// Supremum of G (y-u) gH-minus c|y-u| over members (G, c) sampled from the
/// regions at each c (polygon vertices plus `samples` seeded interior points).
/// `residuals` must come from frechet_residual at u and decay below
/// kLimitTol; otherwise PreconditionError. 1D only.
SupFormResult sup_form_check(const Ivf& f, double u, double y, std::span<const double> c_list,
                             std::span<const double> residuals, const GridSpec& spec = {}, std::size_t samples = 100,
                             double tol = kDefaultTol);

}  // namespace ivfopt
