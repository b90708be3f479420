#pragma once

#include "ivfopt/kernels.hpp"

namespace ivfopt::kernels {

// Same selection rule as _mm256_min_pd / _mm256_max_pd: the second operand
// is returned when the comparison is false, which keeps variants bit-exact.
inline double vmin(double a, double b) noexcept { return a < b ? a : b; }
inline double vmax(double a, double b) noexcept { return a > b ? a : b; }

#if defined(IVFOPT_HAVE_AVX2)
const Table& avx2_table();
#endif

}  // namespace ivfopt::kernels
