#include "ivfopt/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "ivfopt/errors.hpp"

namespace ivfopt {

ConcavityResult concavity_check(const Ivf& f, const GridSpec& spec, double tol) {
    GridSpec s = spec;
    s.focal = false;
    if (s.points == 0) s.points = f.dim() == 1 ? 201 : 15;
    const Grid grid = make_grid(f.domain(), s);
    std::vector<double> lo;
    std::vector<double> hi;
    f.eval_grid(grid, lo, hi);

    const std::size_t dim = f.dim();
    std::vector<double> mid(dim);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const auto a = grid.point(i);
            const auto b = grid.point(j);
            for (std::size_t d = 0; d < dim; ++d) mid[d] = 0.5 * (a[d] + b[d]);
            if (!f.contains(mid)) continue;
            const Interval m = f.eval(mid);
            const bool lower_ok = m.lo() >= 0.5 * (lo[i] + lo[j]) - tol;
            const bool upper_ok = m.hi() >= 0.5 * (hi[i] + hi[j]) - tol;
            if (!lower_ok || !upper_ok) {
                ConcavityResult r;
                r.concave = false;
                r.witness.emplace(std::vector<double>(a.begin(), a.end()), std::vector<double>(b.begin(), b.end()));
                r.endpoint = lower_ok ? "upper" : "lower";
                return r;
            }
        }
    }
    return {};
}

LimitTrace gh_continuity_check(const Ivf& f, std::span<const double> u, std::span<const double> radii, double tol) {
    const Interval fu = f.eval(u);
    const std::size_t dim = f.dim();
    LimitTrace out;
    std::vector<double> y(dim);
    for (const double r : radii) {
        const std::vector<double> offs = sphere_offsets(dim, r);
        double gap = 0.0;
        for (std::size_t o = 0; o < offs.size(); o += dim) {
            for (std::size_t d = 0; d < dim; ++d) y[d] = u[d] + offs[o + d];
            if (!f.contains(y)) continue;
            gap = std::max(gap, norm(gh_sub(f.eval(y), fu)));
        }
        out.values.push_back(gap);
    }
    const std::size_t n = out.values.size();
    out.holds = n >= 2 ? out.values[n - 1] <= tol && out.values[n - 2] <= tol : n == 1 && out.values[0] <= tol;
    return out;
}

DerivativeEstimate directional_derivative_estimate(const Ivf& f, std::span<const double> u, std::span<const double> h,
                                                   std::span<const double> betas, double tol) {
    if (h.size() != f.dim()) throw DimensionError("direction dimension does not match the function");
    if (euclidean_norm(h) == 0.0) throw PreconditionError("direction must be nonzero");
    if (betas.empty()) throw PreconditionError("at least one step is required");
    const Interval fu = f.eval(u);
    DerivativeEstimate out;
    std::vector<double> y(f.dim());
    for (const double b : betas) {
        for (std::size_t d = 0; d < y.size(); ++d) y[d] = u[d] + b * h[d];
        out.estimates.push_back(scalar_mul(1.0 / b, gh_sub(f.eval(y), fu)));
    }
    out.value = out.estimates.back();
    if (out.estimates.size() >= 2) {
        const Interval& p = out.estimates[out.estimates.size() - 2];
        out.converged = std::abs(p.lo() - out.value.lo()) <= tol && std::abs(p.hi() - out.value.hi()) <= tol;
    }
    return out;
}

std::vector<double> frechet_residual(const Ivf& f, std::span<const double> u, const IntervalVector& g,
                                     std::span<const double> radii) {
    const std::size_t dim = f.dim();
    if (g.size() != dim) throw DimensionError("derivative dimension does not match the function");
    const Interval fu = f.eval(u);
    std::vector<double> out;
    std::vector<double> y(dim);
    std::vector<double> h(dim);
    for (const double r : radii) {
        const std::vector<double> offs = sphere_offsets(dim, r);
        double worst = 0.0;
        bool any = false;
        for (std::size_t o = 0; o < offs.size(); o += dim) {
            for (std::size_t d = 0; d < dim; ++d) {
                h[d] = offs[o + d];
                y[d] = u[d] + h[d];
            }
            if (!f.contains(y)) continue;
            any = true;
            const double hn = euclidean_norm(h);
            worst = std::max(worst, norm(gh_sub(gh_sub(f.eval(y), fu), inner_product(h, g))) / hn);
        }
        if (!any) {
            throw OutOfDomainError("no probe point of radius " + std::to_string(r) + " lies in the domain",
                                   std::vector<double>(u.begin(), u.end()));
        }
        out.push_back(worst);
    }
    return out;
}

IntervalVector frechet_derivative_estimate(const Ivf& f, std::span<const double> u, std::span<const double> betas) {
    const std::size_t dim = f.dim();
    std::vector<Interval> comps;
    std::vector<double> h(dim, 0.0);
    std::vector<double> y(u.begin(), u.end());
    for (std::size_t i = 0; i < dim; ++i) {
        std::fill(h.begin(), h.end(), 0.0);
        y[i] = u[i] + betas.front();
        const bool forward = f.contains(y);
        y[i] = u[i];
        h[i] = forward ? 1.0 : -1.0;
        const DerivativeEstimate est = directional_derivative_estimate(f, u, h, betas);
        // Along -e_i the quotient estimates -G_i.
        comps.push_back(forward ? est.value : scalar_mul(-1.0, est.value));
    }
    return IntervalVector(std::move(comps));
}

}  // namespace ivfopt
