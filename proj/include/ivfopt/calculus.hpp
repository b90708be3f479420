#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivfopt/grid.hpp"
#include "ivfopt/interval.hpp"
#include "ivfopt/ivf.hpp"

namespace ivfopt {

/// Limit checks accept when the last two estimates along the radii agree within this.
inline constexpr double kLimitTol = 1e-6;

struct ConcavityResult {
    bool concave = true;
    /// On failure: the sampled pair (a, b) and which endpoint ("lower"/"upper") broke midpoint concavity.
    std::optional<std::pair<std::vector<double>, std::vector<double>>> witness;
    std::string endpoint;
};

/// Midpoint concavity of both endpoint functions over all pairs of grid
/// points: e((a+b)/2) >= (e(a)+e(b))/2 - tol. The grid uses spec.points per
/// dimension (201 in 1D and 15 otherwise when spec.points is 0), no focal refinement.
ConcavityResult concavity_check(const Ivf& f, const GridSpec& spec = {}, double tol = 1e-9);

struct LimitTrace {
    bool holds = false;
    std::vector<double> values;
};

/// gap(r) = max over offsets d of norm r of norm(f(u+d) gH-minus f(u)), skipping
/// offsets leaving the domain. Holds iff the last two gaps are <= tol.
LimitTrace gh_continuity_check(const Ivf& f, std::span<const double> u, std::span<const double> radii,
                               double tol = kLimitTol);

struct DerivativeEstimate {
    Interval value;
    bool converged = false;
    std::vector<Interval> estimates;
};

/// (1/b) * (f(u+b h) gH-minus f(u)) along the decreasing betas; the value is
/// the last estimate, converged iff the last two agree endpoint-wise within tol.
/// Throws PreconditionError for h = 0 and OutOfDomainError when u + b h leaves the domain.
DerivativeEstimate directional_derivative_estimate(const Ivf& f, std::span<const double> u, std::span<const double> h,
                                                   std::span<const double> betas, double tol = kLimitTol);

/// For each radius r: max over offsets h of norm r (in the domain) of
/// norm((f(u+h) gH-minus f(u)) gH-minus h^T G) / r.
std::vector<double> frechet_residual(const Ivf& f, std::span<const double> u, const IntervalVector& g,
                                     std::span<const double> radii);

/// Coefficients G_i estimated from directional derivatives along +e_i
/// (or -e_i, sign-corrected, when u is on the upper boundary).
IntervalVector frechet_derivative_estimate(const Ivf& f, std::span<const double> u, std::span<const double> betas);

}  // namespace ivfopt
