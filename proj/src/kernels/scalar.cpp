#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace ivfopt::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void gh_sub_fixed(const double* p_lo, const double* p_hi, double q_lo, double q_hi, double* out_lo,
                  double* out_hi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = p_lo[i] - q_lo;
        const double b = p_hi[i] - q_hi;
        out_lo[i] = vmin(a, b);
        out_hi[i] = vmax(a, b);
    }
}

RegionBounds region_reduce(const double* t, const double* d_lo, const double* d_hi, double c, double tol,
                           std::size_t n) {
    RegionBounds r{-kInf, kInf, -kInf, kInf};
    for (std::size_t i = 0; i < n; ++i) {
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
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = t[i];
        if (ti == 0.0) continue;
        const double a = g_lo * ti;
        const double b = g_hi * ti;
        const double shift = c * std::abs(ti);
        const double lhs_lo = vmin(a, b) - shift;
        const double lhs_hi = vmax(a, b) - shift;
        if (!(lhs_lo <= d_lo[i] + tol) || !(lhs_hi <= d_hi[i] + tol)) return i;
    }
    return n;
}

std::size_t first_not_preceq(const double* z_lo, const double* z_hi, const double* w_lo, const double* w_hi,
                             double tol, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!(z_lo[i] <= w_lo[i] + tol) || !(z_hi[i] <= w_hi[i] + tol)) return i;
    }
    return n;
}

std::size_t first_fixed_not_preceq(double z_lo, double z_hi, const double* w_lo, const double* w_hi, double tol,
                                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!(z_lo <= w_lo[i] + tol) || !(z_hi <= w_hi[i] + tol)) return i;
    }
    return n;
}

std::size_t first_strictly_below_fixed(const double* w_lo, const double* w_hi, double z_lo, double z_hi,
                                       double tol, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const bool weak = w_lo[i] <= z_lo && w_hi[i] <= z_hi;
        const bool strict = w_lo[i] < z_lo - tol || w_hi[i] < z_hi - tol;
        if (weak && strict) return i;
    }
    return n;
}

double lower_lipschitz_max(const double* dist, const double* d_lo, const double* d_hi, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(dist[i] > 0.0)) continue;
        best = vmax(vmax(-d_lo[i], -d_hi[i]) / dist[i], best);
    }
    return best;
}

constexpr Table kScalar{
    "scalar",
    gh_sub_fixed,
    region_reduce,
    first_member_violation_1d,
    first_not_preceq,
    first_fixed_not_preceq,
    first_strictly_below_fixed,
    lower_lipschitz_max,
};

}  // namespace

const Table& scalar() { return kScalar; }

}  // namespace ivfopt::kernels
