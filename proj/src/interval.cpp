#include "ivfopt/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace ivfopt {

namespace {

void require_finite(const Interval& x) {
    if (!x.finite()) {
        throw ExtendedArithmeticError("arithmetic on an interval with an infinite endpoint");
    }
}

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << '[' << x.lo() << ", " << x.hi() << ']';
}

IntervalVector::IntervalVector(std::vector<Interval> items) : items_(std::move(items)) {
    if (items_.empty()) {
        throw DimensionError("interval vector must have at least one component");
    }
}

IntervalVector::IntervalVector(std::initializer_list<Interval> items)
    : IntervalVector(std::vector<Interval>(items)) {}

IntervalVector IntervalVector::zeros(std::size_t n) {
    return IntervalVector(std::vector<Interval>(n, kZero));
}

std::ostream& operator<<(std::ostream& os, const IntervalVector& x) {
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i != 0) os << ", ";
        os << x[i];
    }
    return os << ')';
}

std::string_view to_string(Dominance d) noexcept {
    switch (d) {
        case Dominance::Equal: return "Equal";
        case Dominance::Dominates: return "Dominates";
        case Dominance::StrictlyDominates: return "StrictlyDominates";
        case Dominance::DominatedBy: return "DominatedBy";
        case Dominance::StrictlyDominatedBy: return "StrictlyDominatedBy";
        case Dominance::NotComparable: return "NotComparable";
    }
    return "?";
}

Interval add(const Interval& x, const Interval& y) {
    require_finite(x);
    require_finite(y);
    return {x.lo() + y.lo(), x.hi() + y.hi()};
}

Interval moore_sub(const Interval& x, const Interval& y) {
    require_finite(x);
    require_finite(y);
    return {x.lo() - y.hi(), x.hi() - y.lo()};
}

Interval mul(const Interval& x, const Interval& y) {
    require_finite(x);
    require_finite(y);
    const double p[] = {x.lo() * y.lo(), x.lo() * y.hi(), x.hi() * y.lo(), x.hi() * y.hi()};
    const auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return {*mn, *mx};
}

Interval scalar_mul(double k, const Interval& x) {
    require_finite(x);
    if (!std::isfinite(k)) {
        throw ExtendedArithmeticError("non-finite scalar multiplier");
    }
    // 0 * x is exactly [0, 0]; avoid -0.0 endpoints from negative x.
    if (k == 0.0) return kZero;
    return k > 0.0 ? Interval(k * x.lo(), k * x.hi()) : Interval(k * x.hi(), k * x.lo());
}

Interval gh_sub(const Interval& p, const Interval& q) {
    require_finite(p);
    require_finite(q);
    const double a = p.lo() - q.lo();
    const double b = p.hi() - q.hi();
    return a < b ? Interval(a, b) : Interval(b, a);
}

Dominance dominance(const Interval& z, const Interval& w) {
    // Plain comparisons order +-inf endpoints correctly, so the symbolic
    // elements [-inf,-inf] and [+inf,+inf] need no special case.
    const bool z_le_w = z.lo() <= w.lo() && z.hi() <= w.hi();
    const bool w_le_z = w.lo() <= z.lo() && w.hi() <= z.hi();
    if (z_le_w && w_le_z) return Dominance::Equal;
    if (z_le_w) return (z.lo() < w.lo() || z.hi() < w.hi()) ? Dominance::StrictlyDominates : Dominance::Dominates;
    if (w_le_z) return (w.lo() < z.lo() || w.hi() < z.hi()) ? Dominance::StrictlyDominatedBy : Dominance::DominatedBy;
    return Dominance::NotComparable;
}

bool preceq(const Interval& z, const Interval& w, double tol) {
    return z.lo() <= w.lo() + tol && z.hi() <= w.hi() + tol;
}

bool strictly_precedes(const Interval& z, const Interval& w, double tol) {
    return preceq(z, w, tol) && (z.lo() < w.lo() - tol || z.hi() < w.hi() - tol);
}

bool subseteq(const Interval& x, const Interval& y) {
    return y.lo() <= x.lo() && x.hi() <= y.hi();
}

double width(const Interval& a) {
    require_finite(a);
    return a.hi() - a.lo();
}

double norm(const Interval& x) {
    require_finite(x);
    return std::max(std::abs(x.lo()), std::abs(x.hi()));
}

double vec_norm(const IntervalVector& x) {
    double s = 0.0;
    for (const auto& item : x) s += norm(item);
    return s;
}

Interval inner_product(std::span<const double> v, const IntervalVector& g) {
    require_same_size(v.size(), g.size());
    Interval acc = scalar_mul(v[0], g[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        acc = add(acc, scalar_mul(v[i], g[i]));
    }
    return acc;
}

std::pair<Interval, Interval> family_inf_sup(std::span<const Interval> family) {
    if (family.empty()) {
        throw EmptyFamilyError("infimum/supremum of an empty family");
    }
    double inf_lo = family[0].lo(), inf_hi = family[0].hi();
    double sup_lo = inf_lo, sup_hi = inf_hi;
    for (const auto& x : family.subspan(1)) {
        inf_lo = std::min(inf_lo, x.lo());
        inf_hi = std::min(inf_hi, x.hi());
        sup_lo = std::max(sup_lo, x.lo());
        sup_hi = std::max(sup_hi, x.hi());
    }
    return {Interval(inf_lo, inf_hi), Interval(sup_lo, sup_hi)};
}

IntervalVector vec_elementwise(ElementwiseOp op, const IntervalVector& a, const IntervalVector& b) {
    require_same_size(a.size(), b.size());
    std::vector<Interval> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
            case ElementwiseOp::Add: out.push_back(add(a[i], b[i])); break;
            case ElementwiseOp::MooreSub: out.push_back(moore_sub(a[i], b[i])); break;
            case ElementwiseOp::GhSub: out.push_back(gh_sub(a[i], b[i])); break;
        }
    }
    return IntervalVector(std::move(out));
}

bool vec_preceq(const IntervalVector& a, const IntervalVector& b, double tol) {
    require_same_size(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!preceq(a[i], b[i], tol)) return false;
    }
    return true;
}

double euclidean_norm(std::span<const double> v) noexcept {
    if (v.size() == 1) return std::abs(v[0]);
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace ivfopt
