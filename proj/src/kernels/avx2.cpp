// AVX2 variants of the sweep kernels. Compiled with -mavx2 only; the
// dispatcher checks the CPU before handing this table out.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace ivfopt::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kLanes = 4;

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }
inline __m256d vneg(__m256d x) { return _mm256_xor_pd(_mm256_set1_pd(-0.0), x); }

inline double hmin(__m256d v) {
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, v);
    return vmin(vmin(lanes[0], lanes[1]), vmin(lanes[2], lanes[3]));
}

inline double hmax(__m256d v) {
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, v);
    return vmax(vmax(lanes[0], lanes[1]), vmax(lanes[2], lanes[3]));
}

inline std::size_t first_lane(__m256d mask) {
    return static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(_mm256_movemask_pd(mask))));
}

void gh_sub_fixed(const double* p_lo, const double* p_hi, double q_lo, double q_hi, double* out_lo,
                  double* out_hi, std::size_t n) {
    const __m256d vq_lo = _mm256_set1_pd(q_lo);
    const __m256d vq_hi = _mm256_set1_pd(q_hi);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(p_lo + i), vq_lo);
        const __m256d b = _mm256_sub_pd(_mm256_loadu_pd(p_hi + i), vq_hi);
        _mm256_storeu_pd(out_lo + i, _mm256_min_pd(a, b));
        _mm256_storeu_pd(out_hi + i, _mm256_max_pd(a, b));
    }
    for (; i < n; ++i) {
        const double a = p_lo[i] - q_lo;
        const double b = p_hi[i] - q_hi;
        out_lo[i] = vmin(a, b);
        out_hi[i] = vmax(a, b);
    }
}

RegionBounds region_reduce(const double* t, const double* d_lo, const double* d_hi, double c, double tol,
                           std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d pinf = _mm256_set1_pd(kInf);
    const __m256d ninf = _mm256_set1_pd(-kInf);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vtol = _mm256_set1_pd(tol);
    __m256d lo_max = pinf, hi_max = pinf, lo_min = ninf, hi_min = ninf;

    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d vt = _mm256_loadu_pd(t + i);
        const __m256d lo = _mm256_add_pd(_mm256_loadu_pd(d_lo + i), vtol);
        const __m256d hi = _mm256_add_pd(_mm256_loadu_pd(d_hi + i), vtol);
        const __m256d pos = _mm256_cmp_pd(vt, zero, _CMP_GT_OQ);
        const __m256d neg = _mm256_cmp_pd(vt, zero, _CMP_LT_OQ);

        const __m256d up_lo = _mm256_add_pd(_mm256_div_pd(lo, vt), vc);
        const __m256d up_hi = _mm256_add_pd(_mm256_div_pd(hi, vt), vc);
        lo_max = _mm256_min_pd(_mm256_blendv_pd(pinf, up_lo, pos), lo_max);
        hi_max = _mm256_min_pd(_mm256_blendv_pd(pinf, up_hi, pos), hi_max);

        const __m256d shift = _mm256_mul_pd(vc, vabs(vt));
        const __m256d dn_lo = _mm256_div_pd(_mm256_add_pd(hi, shift), vt);
        const __m256d dn_hi = _mm256_div_pd(_mm256_add_pd(lo, shift), vt);
        lo_min = _mm256_max_pd(_mm256_blendv_pd(ninf, dn_lo, neg), lo_min);
        hi_min = _mm256_max_pd(_mm256_blendv_pd(ninf, dn_hi, neg), hi_min);
    }

    RegionBounds r{hmax(lo_min), hmin(lo_max), hmax(hi_min), hmin(hi_max)};
    for (; i < n; ++i) {
        const double ti = t[i];
        if (ti > 0.0) {
            r.lo_max = vmin((d_lo[i] + tol) / ti + c, r.lo_max);
            r.hi_max = vmin((d_hi[i] + tol) / ti + c, r.hi_max);
        } else if (ti < 0.0) {
            const double shift = c * (-ti);
            r.lo_min = vmax((d_hi[i] + tol + shift) / ti, r.lo_min);
            r.hi_min = vmax((d_lo[i] + tol + shift) / ti, r.hi_min);
        }
    }
    return r;
}

std::size_t first_member_violation_1d(const double* t, const double* d_lo, const double* d_hi, double g_lo,
                                      double g_hi, double c, double tol, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d vg_lo = _mm256_set1_pd(g_lo);
    const __m256d vg_hi = _mm256_set1_pd(g_hi);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vtol = _mm256_set1_pd(tol);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d vt = _mm256_loadu_pd(t + i);
        const __m256d a = _mm256_mul_pd(vg_lo, vt);
        const __m256d b = _mm256_mul_pd(vg_hi, vt);
        const __m256d shift = _mm256_mul_pd(vc, vabs(vt));
        const __m256d lhs_lo = _mm256_sub_pd(_mm256_min_pd(a, b), shift);
        const __m256d lhs_hi = _mm256_sub_pd(_mm256_max_pd(a, b), shift);
        const __m256d bad_lo = _mm256_cmp_pd(lhs_lo, _mm256_add_pd(_mm256_loadu_pd(d_lo + i), vtol), _CMP_NLE_UQ);
        const __m256d bad_hi = _mm256_cmp_pd(lhs_hi, _mm256_add_pd(_mm256_loadu_pd(d_hi + i), vtol), _CMP_NLE_UQ);
        const __m256d active = _mm256_cmp_pd(vt, zero, _CMP_NEQ_UQ);
        const __m256d bad = _mm256_and_pd(active, _mm256_or_pd(bad_lo, bad_hi));
        if (_mm256_movemask_pd(bad) != 0) return i + first_lane(bad);
    }
    for (; i < n; ++i) {
        const double ti = t[i];
        if (ti == 0.0) continue;
        const double a = g_lo * ti;
        const double b = g_hi * ti;
        const double shift = c * std::abs(ti);
        if (!(vmin(a, b) - shift <= d_lo[i] + tol) || !(vmax(a, b) - shift <= d_hi[i] + tol)) return i;
    }
    return n;
}

std::size_t first_not_preceq(const double* z_lo, const double* z_hi, const double* w_lo, const double* w_hi,
                             double tol, std::size_t n) {
    const __m256d vtol = _mm256_set1_pd(tol);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d bad_lo = _mm256_cmp_pd(_mm256_loadu_pd(z_lo + i),
                                             _mm256_add_pd(_mm256_loadu_pd(w_lo + i), vtol), _CMP_NLE_UQ);
        const __m256d bad_hi = _mm256_cmp_pd(_mm256_loadu_pd(z_hi + i),
                                             _mm256_add_pd(_mm256_loadu_pd(w_hi + i), vtol), _CMP_NLE_UQ);
        const __m256d bad = _mm256_or_pd(bad_lo, bad_hi);
        if (_mm256_movemask_pd(bad) != 0) return i + first_lane(bad);
    }
    for (; i < n; ++i) {
        if (!(z_lo[i] <= w_lo[i] + tol) || !(z_hi[i] <= w_hi[i] + tol)) return i;
    }
    return n;
}

std::size_t first_fixed_not_preceq(double z_lo, double z_hi, const double* w_lo, const double* w_hi, double tol,
                                   std::size_t n) {
    const __m256d vz_lo = _mm256_set1_pd(z_lo);
    const __m256d vz_hi = _mm256_set1_pd(z_hi);
    const __m256d vtol = _mm256_set1_pd(tol);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d bad_lo = _mm256_cmp_pd(vz_lo, _mm256_add_pd(_mm256_loadu_pd(w_lo + i), vtol), _CMP_NLE_UQ);
        const __m256d bad_hi = _mm256_cmp_pd(vz_hi, _mm256_add_pd(_mm256_loadu_pd(w_hi + i), vtol), _CMP_NLE_UQ);
        const __m256d bad = _mm256_or_pd(bad_lo, bad_hi);
        if (_mm256_movemask_pd(bad) != 0) return i + first_lane(bad);
    }
    for (; i < n; ++i) {
        if (!(z_lo <= w_lo[i] + tol) || !(z_hi <= w_hi[i] + tol)) return i;
    }
    return n;
}

std::size_t first_strictly_below_fixed(const double* w_lo, const double* w_hi, double z_lo, double z_hi,
                                       double tol, std::size_t n) {
    const __m256d up_lo = _mm256_set1_pd(z_lo);
    const __m256d up_hi = _mm256_set1_pd(z_hi);
    const __m256d dn_lo = _mm256_set1_pd(z_lo - tol);
    const __m256d dn_hi = _mm256_set1_pd(z_hi - tol);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d lo = _mm256_loadu_pd(w_lo + i);
        const __m256d hi = _mm256_loadu_pd(w_hi + i);
        const __m256d weak = _mm256_and_pd(_mm256_cmp_pd(lo, up_lo, _CMP_LE_OQ), _mm256_cmp_pd(hi, up_hi, _CMP_LE_OQ));
        const __m256d strict = _mm256_or_pd(_mm256_cmp_pd(lo, dn_lo, _CMP_LT_OQ), _mm256_cmp_pd(hi, dn_hi, _CMP_LT_OQ));
        const __m256d hit = _mm256_and_pd(weak, strict);
        if (_mm256_movemask_pd(hit) != 0) return i + first_lane(hit);
    }
    for (; i < n; ++i) {
        const bool weak = w_lo[i] <= z_lo && w_hi[i] <= z_hi;
        const bool strict = w_lo[i] < z_lo - tol || w_hi[i] < z_hi - tol;
        if (weak && strict) return i;
    }
    return n;
}

double lower_lipschitz_max(const double* dist, const double* d_lo, const double* d_hi, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d ninf = _mm256_set1_pd(-kInf);
    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d vd = _mm256_loadu_pd(dist + i);
        const __m256d worst = _mm256_max_pd(vneg(_mm256_loadu_pd(d_lo + i)), vneg(_mm256_loadu_pd(d_hi + i)));
        const __m256d ratio = _mm256_div_pd(worst, vd);
        const __m256d valid = _mm256_cmp_pd(vd, zero, _CMP_GT_OQ);
        acc = _mm256_max_pd(_mm256_blendv_pd(ninf, ratio, valid), acc);
    }
    double best = hmax(acc);
    for (; i < n; ++i) {
        if (!(dist[i] > 0.0)) continue;
        best = vmax(vmax(-d_lo[i], -d_hi[i]) / dist[i], best);
    }
    return best;
}

constexpr Table kAvx2{
    "avx2",
    gh_sub_fixed,
    region_reduce,
    first_member_violation_1d,
    first_not_preceq,
    first_fixed_not_preceq,
    first_strictly_below_fixed,
    lower_lipschitz_max,
};

}  // namespace

const Table& avx2_table() { return kAvx2; }

}  // namespace ivfopt::kernels
