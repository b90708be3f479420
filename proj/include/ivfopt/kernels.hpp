#pragma once

// Batched inner loops of the grid sweeps.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. Variants are bit-exact with the reference: they
// perform the same IEEE operations in the same order per element (no FMA
// contraction), and reductions only use min/max, which do not depend on the
// evaluation order. Reductions skip NaN candidates (the accumulator is the
// operand returned on an unordered comparison). Index-returning kernels report the first matching element.
//
// Array arguments are structure-of-arrays spans of equal length n.

#include <cstddef>
#include <string_view>

namespace ivfopt::kernels {

/// Bounds on (g_lo, g_hi) implied by 1D weak-subgradient constraints.
/// lo_max/hi_max come from points with t > 0 (start at +inf), lo_min/hi_min
/// from points with t < 0 (start at -inf). Points with t == 0 are ignored.
struct RegionBounds {
    double lo_min;
    double lo_max;
    double hi_min;
    double hi_max;
};

struct Table {
    std::string_view name;

    /// out = p[i] gH-minus the fixed interval [q_lo, q_hi].
    void (*gh_sub_fixed)(const double* p_lo, const double* p_hi, double q_lo, double q_hi,
                         double* out_lo, double* out_hi, std::size_t n);

    /// For t > 0: g_lo <= (d_lo + tol)/t + c, g_hi <= (d_hi + tol)/t + c.
    /// For t < 0: g_lo >= (d_hi + tol + c|t|)/t, g_hi >= (d_lo + tol + c|t|)/t.
    RegionBounds (*region_reduce)(const double* t, const double* d_lo, const double* d_hi, double c,
                                  double tol, std::size_t n);

    /// First i with t[i] != 0 where [g_lo,g_hi]*t gH-minus [c|t|, c|t|] is not <= [d_lo, d_hi] (+tol).
    /// Returns n when every point satisfies the inequality.
    std::size_t (*first_member_violation_1d)(const double* t, const double* d_lo, const double* d_hi,
                                             double g_lo, double g_hi, double c, double tol,
                                             std::size_t n);

    /// First i where [z_lo[i], z_hi[i]] is not <= [w_lo[i], w_hi[i]] (+tol); n if none.
    std::size_t (*first_not_preceq)(const double* z_lo, const double* z_hi, const double* w_lo,
                                    const double* w_hi, double tol, std::size_t n);

    /// First i where the fixed interval [z_lo, z_hi] is not <= [w_lo[i], w_hi[i]] (+tol); n if none.
    std::size_t (*first_fixed_not_preceq)(double z_lo, double z_hi, const double* w_lo, const double* w_hi,
                                          double tol, std::size_t n);

    /// First i where [w_lo[i], w_hi[i]] strictly dominates the fixed [z_lo, z_hi]
    /// (w <= z exactly and one endpoint below z - tol); n if none.
    std::size_t (*first_strictly_below_fixed)(const double* w_lo, const double* w_hi, double z_lo, double z_hi,
                                              double tol, std::size_t n);

    /// max(0, max_i over dist[i] > 0 of max(-d_lo[i], -d_hi[i]) / dist[i]).
    double (*lower_lipschitz_max)(const double* dist, const double* d_lo, const double* d_hi, std::size_t n);
};

const Table& scalar();

/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const Table* avx2();

/// Kernels used by the library. Chooses AVX2 when available unless the
/// environment variable IVFOPT_SIMD is set to "scalar".
const Table& active();

}  // namespace ivfopt::kernels
