#include "ivfopt/weak_subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ivfopt/errors.hpp"
#include "ivfopt/kernels.hpp"

namespace ivfopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kShellLevels = 8;

std::string describe(std::span<const double> y) {
    std::ostringstream os;
    os.precision(12);
    os << '(';
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i != 0) os << ", ";
        os << y[i];
    }
    os << ')';
    return os.str();
}

double violation(const Interval& lhs, double rhs_lo, double rhs_hi) {
    return std::max(lhs.lo() - rhs_lo, lhs.hi() - rhs_hi);
}

}  // namespace

WeakCandidate::WeakCandidate(IntervalVector g_, double c_) : g(std::move(g_)), c(c_) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw PreconditionError("c must be a finite nonnegative number");
    for (const Interval& x : g) {
        if (!x.finite()) throw ExtendedArithmeticError("candidate components must be finite");
    }
}

// ---- FocalSweep ----

FocalSweep::FocalSweep(const Ivf& f, std::span<const double> u, Grid grid)
    : f_(f), u_(u.begin(), u.end()), grid_(std::move(grid)) {
    if (u_.size() != f.dim() || grid_.dim() != f.dim()) {
        throw DimensionError("focal point or grid dimension does not match the function");
    }
    fu_ = f.eval(u_);
    const std::size_t n = grid_.size();
    const std::size_t dim = f.dim();
    off_.resize(n * dim);
    dist_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto y = grid_.point(i);
        for (std::size_t d = 0; d < dim; ++d) off_[i * dim + d] = y[d] - u_[d];
        dist_[i] = dim == 1 ? std::abs(off_[i]) : euclidean_norm({off_.data() + i * dim, dim});
    }
    f.eval_grid(grid_, f_lo_, f_hi_);
    d_lo_.resize(n);
    d_hi_.resize(n);
    kernels::active().gh_sub_fixed(f_lo_.data(), f_hi_.data(), fu_.lo(), fu_.hi(), d_lo_.data(), d_hi_.data(), n);
}

FocalSweep FocalSweep::build(const Ivf& f, std::span<const double> u, const GridSpec& spec) {
    if (u.size() != f.dim()) throw DimensionError("focal point dimension does not match the function");
    if (!f.contains(u)) {
        throw OutOfDomainError(describe(u) + " is outside the domain of '" + f.name() + "'",
                               std::vector<double>(u.begin(), u.end()));
    }
    return FocalSweep(f, u, make_grid(f.domain(), spec, u));
}

double FocalSweep::finest() const noexcept {
    double best = kInf;
    for (const double d : dist_) {
        if (d > 0.0) best = std::min(best, d);
    }
    return best;
}

FocalSweep FocalSweep::within(double radius) const {
    std::vector<double> coords;
    const std::size_t dim = this->dim();
    for (std::size_t i = 0; i < size(); ++i) {
        if (dist_[i] <= radius) {
            const auto y = grid_.point(i);
            coords.insert(coords.end(), y.begin(), y.end());
        }
    }
    return FocalSweep(f_, u_, Grid(dim, std::move(coords)));
}

// ---- membership ----

Interval weak_lhs(std::span<const double> offset, const WeakCandidate& cand) {
    const double r = offset.size() == 1 ? std::abs(offset[0]) : euclidean_norm(offset);
    return gh_sub(inner_product(offset, cand.g), Interval::point(cand.c * r));
}

CheckResult member_check(const FocalSweep& sweep, const WeakCandidate& cand, double tol) {
    const std::size_t n = sweep.size();
    const std::size_t dim = sweep.dim();
    if (cand.g.size() != dim) {
        throw DimensionError("candidate has " + std::to_string(cand.g.size()) + " components, function has dimension " +
                             std::to_string(dim));
    }
    const auto& k = kernels::active();
    std::size_t first = n;
    if (dim == 1) {
        first = k.first_member_violation_1d(sweep.offsets().data(), sweep.d_lo().data(), sweep.d_hi().data(),
                                            cand.g[0].lo(), cand.g[0].hi(), cand.c, tol, n);
    } else {
        std::vector<double> z_lo(n);
        std::vector<double> z_hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (sweep.dist()[i] == 0.0) {
                z_lo[i] = -kInf;
                z_hi[i] = -kInf;
                continue;
            }
            const Interval lhs = weak_lhs({sweep.offsets().data() + i * dim, dim}, cand);
            z_lo[i] = lhs.lo();
            z_hi[i] = lhs.hi();
        }
        first = k.first_not_preceq(z_lo.data(), z_hi.data(), sweep.d_lo().data(), sweep.d_hi().data(), tol, n);
    }
    if (first == n) return {};

    CheckResult r;
    r.holds = false;
    std::size_t worst = first;
    double worst_v = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        if (sweep.dist()[i] == 0.0) continue;
        const double v =
            violation(weak_lhs({sweep.offsets().data() + i * dim, dim}, cand), sweep.d_lo()[i], sweep.d_hi()[i]);
        if (v > worst_v) {
            worst_v = v;
            worst = i;
        }
    }
    const auto y = sweep.grid().point(worst);
    r.witness.emplace(y.begin(), y.end());
    r.violation = worst_v;
    return r;
}

CheckResult member_check(const Ivf& f, std::span<const double> u, const WeakCandidate& cand, const GridSpec& spec,
                         double tol) {
    return member_check(FocalSweep::build(f, u, spec), cand, tol);
}

// ---- Region1D ----

bool Region1D::bounded() const noexcept {
    return std::isfinite(lo_min) && std::isfinite(lo_max) && std::isfinite(hi_min) && std::isfinite(hi_max);
}

namespace {

std::pair<double, double> ordered(double a, double b) noexcept {
    if (a <= b) return {a, b};
    const double m = 0.5 * (a + b);
    return {m, m};
}

}  // namespace

std::pair<double, double> Region1D::lo_range() const noexcept { return ordered(lo_min, lo_max); }
std::pair<double, double> Region1D::hi_range() const noexcept { return ordered(hi_min, hi_max); }

std::vector<std::pair<double, double>> Region1D::vertices(double clip) const {
    if (empty) return {};
    auto clamp = [clip](double v) { return std::clamp(v, -clip, clip); };
    const auto [a1, a2] = lo_range();
    const auto [a3, a4] = hi_range();
    const double x0 = clamp(a1);
    const double x1 = clamp(a2);
    const double y0 = clamp(a3);
    const double y1 = clamp(a4);

    // Clip the rectangle against x <= y (Sutherland-Hodgman, one edge).
    const std::vector<std::pair<double, double>> rect{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    std::vector<std::pair<double, double>> out;
    auto inside = [](const std::pair<double, double>& p) { return p.first <= p.second; };
    for (std::size_t i = 0; i < rect.size(); ++i) {
        const auto& p = rect[i];
        const auto& q = rect[(i + 1) % rect.size()];
        const bool pin = inside(p);
        const bool qin = inside(q);
        if (pin) out.push_back(p);
        if (pin != qin) {
            // Edge crosses x = y; edges are axis-parallel so the crossing is on x or y fixed.
            const double v = p.first == q.first ? p.first : p.second;
            out.emplace_back(v, v);
        }
    }
    std::vector<std::pair<double, double>> uniq;
    for (const auto& p : out) {
        if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
    }
    if (uniq.empty()) {
        // Nonempty by the relaxed bounds but crossing by rounding: use the touching point.
        const double m = 0.5 * (x0 + y1);
        uniq.emplace_back(m, m);
    }
    return uniq;
}

bool Region1D::contains(double g_lo, double g_hi, double tol) const noexcept {
    if (empty) return false;
    return g_lo >= lo_min - tol && g_lo <= lo_max + tol && g_hi >= hi_min - tol && g_hi <= hi_max + tol &&
           g_lo <= g_hi + tol;
}

Region1D region_1d(const FocalSweep& sweep, double c, double tol) {
    if (sweep.dim() != 1) throw DimensionError("exact regions are only available in one dimension");
    if (!(c >= 0.0) || !std::isfinite(c)) throw PreconditionError("c must be a finite nonnegative number");
    const auto& k = kernels::active();
    const std::size_t n = sweep.size();
    const double* t = sweep.offsets().data();
    const kernels::RegionBounds exact = k.region_reduce(t, sweep.d_lo().data(), sweep.d_hi().data(), c, 0.0, n);
    const kernels::RegionBounds half = k.region_reduce(t, sweep.d_lo().data(), sweep.d_hi().data(), c, 0.5 * tol, n);
    const kernels::RegionBounds relaxed = k.region_reduce(t, sweep.d_lo().data(), sweep.d_hi().data(), c, tol, n);
    Region1D r{};
    r.lo_min = exact.lo_min;
    r.lo_max = exact.lo_max;
    r.hi_min = exact.hi_min;
    r.hi_max = exact.hi_max;
    // Rounding in f near u can push an exact bound just past what member_check
    // accepts; pull it back into the tol/2-relaxed range so corners stay members.
    if (half.lo_min <= half.lo_max) {
        r.lo_min = std::clamp(r.lo_min, half.lo_min, half.lo_max);
        r.lo_max = std::clamp(r.lo_max, half.lo_min, half.lo_max);
    }
    if (half.hi_min <= half.hi_max) {
        r.hi_min = std::clamp(r.hi_min, half.hi_min, half.hi_max);
        r.hi_max = std::clamp(r.hi_max, half.hi_min, half.hi_max);
    }
    r.empty = relaxed.lo_min > relaxed.lo_max || relaxed.hi_min > relaxed.hi_max || relaxed.lo_min > relaxed.hi_max;
    r.c = c;
    r.u = sweep.u()[0];
    r.finest = sweep.finest();
    return r;
}

Region1D region_1d(const Ivf& f, double u, double c, const GridSpec& spec, double tol) {
    if (f.dim() != 1) throw DimensionError("exact regions are only available in one dimension");
    return region_1d(FocalSweep::build(f, std::span<const double>(&u, 1), spec), c, tol);
}

// ---- support function ----

Interval support_ivf_eval(const Ivf& f, std::span<const double> u, const WeakCandidate& cand,
                          std::span<const double> y) {
    if (y.size() != u.size()) throw DimensionError("point dimensions differ");
    const Interval fu = f.eval(u);
    f.eval(y);  // domain check on y
    std::vector<double> off(y.size());
    for (std::size_t d = 0; d < y.size(); ++d) off[d] = y[d] - u[d];
    return add(fu, weak_lhs(off, cand));
}

CheckResult support_check(const FocalSweep& sweep, const WeakCandidate& cand, double tol) {
    const std::size_t n = sweep.size();
    const std::size_t dim = sweep.dim();
    CheckResult r;
    double worst_v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Interval h = add(sweep.fu(), weak_lhs({sweep.offsets().data() + i * dim, dim}, cand));
        const double v = violation(h, sweep.f_lo()[i], sweep.f_hi()[i]);
        const bool at_u = sweep.dist()[i] == 0.0;
        const bool bad = at_u ? !(h == sweep.fu()) : v > tol;
        if (bad && (r.holds || v > worst_v)) {
            r.holds = false;
            worst_v = v;
            const auto y = sweep.grid().point(i);
            r.witness.emplace(y.begin(), y.end());
            r.violation = v;
        }
    }
    return r;
}

// ---- Frechet lower subdifferential ----

FrechetLowerResult frechet_lower_member_check(const Ivf& f, std::span<const double> u, const IntervalVector& g,
                                              std::span<const double> radii, double tol) {
    const std::size_t dim = f.dim();
    if (g.size() != dim) throw DimensionError("candidate dimension does not match the function");
    std::vector<double> rs = radii.empty() ? default_radii() : std::vector<double>(radii.begin(), radii.end());
    const Interval fu = f.eval(u);
    FrechetLowerResult out;
    out.radii = rs;
    std::vector<double> h(dim);
    std::vector<double> y(dim);
    std::vector<bool> ok;
    for (const double r : rs) {
        const std::vector<double> offs = sphere_offsets(dim, r);
        double inf_lo = kInf;
        double inf_hi = kInf;
        bool any = false;
        for (std::size_t o = 0; o < offs.size(); o += dim) {
            for (std::size_t d = 0; d < dim; ++d) {
                h[d] = offs[o + d];
                y[d] = u[d] + h[d];
            }
            if (!f.contains(y)) continue;
            any = true;
            const double hn = dim == 1 ? std::abs(h[0]) : euclidean_norm(h);
            const Interval q = scalar_mul(1.0 / hn, gh_sub(gh_sub(f.eval(y), fu), inner_product(h, g)));
            inf_lo = std::min(inf_lo, q.lo());
            inf_hi = std::min(inf_hi, q.hi());
        }
        if (!any) {
            throw OutOfDomainError("no probe point at radius " + std::to_string(r) + " lies in the domain",
                                   std::vector<double>(u.begin(), u.end()));
        }
        out.shell_inf.emplace_back(inf_lo, inf_hi);
        ok.push_back(inf_lo >= -tol && inf_hi >= -tol);
    }
    const std::size_t n = ok.size();
    out.holds = n >= 2 ? ok[n - 1] && ok[n - 2] : n == 1 && ok[0];
    for (std::size_t i = n; i-- > 0;) {
        if (!ok[i]) break;
        out.certified_radius = rs[i];
    }
    return out;
}

FrechetWeakResult weak_from_frechet(const Ivf& f, std::span<const double> u, const IntervalVector& g, double eps,
                                    const GridSpec& spec, std::span<const double> radii, double tol) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw PreconditionError("eps must be a finite nonnegative number");
    const FrechetLowerResult fr = frechet_lower_member_check(f, u, g, radii);
    if (!fr.holds || fr.certified_radius <= 0.0) {
        throw PreconditionError("G is not a Frechet lower subgradient at " + describe(u));
    }
    WeakCandidate cand(g, eps);
    const FocalSweep ball = FocalSweep::build(f, u, spec).within(fr.certified_radius);
    const CheckResult m = member_check(ball, cand, tol);
    if (!m.holds) {
        throw TheoremViolation("(G, " + std::to_string(eps) + ") fails the weak-subgradient inequality at " +
                               describe(*m.witness) + " inside the certified ball of radius " +
                               std::to_string(fr.certified_radius));
    }
    return {std::move(cand), fr.certified_radius};
}

// ---- lower Lipschitz ----

bool shells_diverge(std::span<const double> q) noexcept {
    const std::size_t k = q.size();
    if (k < 3) return false;
    return q[k - 1] > 1.0 && q[k - 1] >= 3.0 * q[k - 3];
}

namespace {

double ratio_max_where(const FocalSweep& s, bool (*keep)(double, double), double r) {
    std::vector<double> dist;
    std::vector<double> lo;
    std::vector<double> hi;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!keep(s.dist()[i], r)) continue;
        dist.push_back(s.dist()[i]);
        lo.push_back(s.d_lo()[i]);
        hi.push_back(s.d_hi()[i]);
    }
    return kernels::active().lower_lipschitz_max(dist.data(), lo.data(), hi.data(), dist.size());
}

}  // namespace

LipschitzReport lower_lipschitz_estimate(const FocalSweep& sweep) {
    LipschitzReport rep;
    const auto& k = kernels::active();
    rep.sampled_max = k.lower_lipschitz_max(sweep.dist().data(), sweep.d_lo().data(), sweep.d_hi().data(), sweep.size());
    for (int lvl = 1; lvl <= kShellLevels; ++lvl) {
        rep.shell_max.push_back(
            ratio_max_where(sweep, [](double d, double r) { return d >= r; }, std::pow(10.0, -lvl)));
    }
    rep.divergent = shells_diverge(rep.shell_max);
    if (rep.divergent) return rep;
    rep.global_l = rep.sampled_max;
    rep.local_l = ratio_max_where(sweep, [](double d, double r) { return d <= r; }, 0.1);
    const double p = rep.sampled_max;
    const double un = sweep.dim() == 1 ? std::abs(sweep.u()[0]) : euclidean_norm(sweep.u());
    rep.certificate.emplace(p, gh_sub(sweep.fu(), Interval::point(p * un)));
    return rep;
}

LipschitzReport lower_lipschitz_estimate(const Ivf& f, std::span<const double> u, const GridSpec& spec) {
    return lower_lipschitz_estimate(FocalSweep::build(f, u, spec));
}

std::vector<double> default_c_list() { return {0.0, 0.25, 0.5, 1.0, 2.0}; }

namespace {

// Smallest c >= 0 for which the 1D region built from the points with |t| >= r is nonempty.
double c_min_where(const FocalSweep& s, double r) {
    std::vector<double> t;
    std::vector<double> lo;
    std::vector<double> hi;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.dist()[i] < r || s.dist()[i] == 0.0) continue;
        t.push_back(s.offsets()[i]);
        lo.push_back(s.d_lo()[i]);
        hi.push_back(s.d_hi()[i]);
    }
    const kernels::RegionBounds b = kernels::active().region_reduce(t.data(), lo.data(), hi.data(), 0.0, 0.0, t.size());
    // With c: lo_max + c, hi_max + c, lo_min - c, hi_min - c.
    double c = 0.0;
    auto need = [&c](double lower, double upper) {
        if (std::isfinite(lower) && std::isfinite(upper)) c = std::max(c, 0.5 * (lower - upper));
    };
    need(b.lo_min, b.lo_max);
    need(b.hi_min, b.hi_max);
    need(b.lo_min, b.hi_max);
    return c;
}

}  // namespace

EquivalenceReport equivalence_report(const Ivf& f, std::span<const double> u, const GridSpec& spec,
                                     std::span<const double> c_probe, double tol) {
    const FocalSweep sweep = FocalSweep::build(f, u, spec);
    EquivalenceReport rep;
    rep.lipschitz = lower_lipschitz_estimate(sweep);
    rep.lower_lipschitz = rep.lipschitz.global_l.has_value();

    if (rep.lipschitz.certificate) {
        const auto& [p, q] = *rep.lipschitz.certificate;
        bool ok = true;
        for (std::size_t i = 0; i < sweep.size() && ok; ++i) {
            const auto y = sweep.grid().point(i);
            const double yn = y.size() == 1 ? std::abs(y[0]) : euclidean_norm(y);
            const Interval lhs = add(Interval::point(-p * yn), q);
            ok = preceq(lhs, Interval(sweep.f_lo()[i], sweep.f_hi()[i]), tol);
        }
        rep.certificate_exists = ok;
    }

    if (f.dim() == 1) {
        for (int lvl = 1; lvl <= kShellLevels; ++lvl) rep.c_min_shells.push_back(c_min_where(sweep, std::pow(10.0, -lvl)));
        const double cm = c_min_where(sweep, 0.0);
        rep.c_min = cm;
        if (!shells_diverge(rep.c_min_shells)) {
            std::vector<double> probes =
                c_probe.empty() ? default_c_list() : std::vector<double>(c_probe.begin(), c_probe.end());
            probes.push_back(cm);
            for (const double c : probes) {
                if (!region_1d(sweep, c, tol).empty) {
                    rep.weak_subdiff_nonempty = true;
                    break;
                }
            }
        }
    } else if (!rep.lipschitz.divergent) {
        rep.weak_subdiff_nonempty =
            member_check(sweep, WeakCandidate(IntervalVector::zeros(f.dim()), rep.lipschitz.sampled_max), tol).holds;
    }

    if (rep.lipschitz.divergent) {
        rep.caveats.push_back("difference quotient grows without bound on the focal shells; a finite grid bounds it by " +
                              std::to_string(rep.lipschitz.sampled_max) + " but the limit does not exist");
    }
    if (!spec.focal) rep.caveats.push_back("focal refinement disabled; limits near u are not probed");
    return rep;
}

}  // namespace ivfopt
