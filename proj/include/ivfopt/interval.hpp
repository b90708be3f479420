#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ivfopt/errors.hpp"

namespace ivfopt {

/// Closed interval [lo, hi] over the extended reals.
///
/// Endpoints may be +-inf so that the completed space (with the symbolic
/// elements [-inf,-inf] and [+inf,+inf]) can be ordered; every arithmetic
/// operation requires finite endpoints and throws ExtendedArithmeticError
/// otherwise. Values are immutable and compare by exact endpoint equality.
class Interval {
public:
    constexpr Interval() noexcept = default;

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi)) {
            throw InvalidIntervalError("interval endpoint is NaN");
        }
        if (lo > hi) {
            throw InvalidIntervalError("interval lower endpoint exceeds upper endpoint");
        }
    }

    /// Degenerate interval [k, k].
    static Interval point(double k) { return Interval(k, k); }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }

    bool finite() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }
    bool degenerate() const noexcept { return lo_ == hi_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline const Interval kZero{};

std::ostream& operator<<(std::ostream& os, const Interval& x);

/// Ordered tuple of intervals, an element of I(R)^n with n >= 1.
class IntervalVector {
public:
    explicit IntervalVector(std::vector<Interval> items);
    IntervalVector(std::initializer_list<Interval> items);

    /// n copies of [0, 0].
    static IntervalVector zeros(std::size_t n);

    std::size_t size() const noexcept { return items_.size(); }
    const Interval& operator[](std::size_t i) const { return items_[i]; }
    std::span<const Interval> items() const noexcept { return items_; }

    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    friend bool operator==(const IntervalVector&, const IntervalVector&) = default;

private:
    std::vector<Interval> items_;
};

std::ostream& operator<<(std::ostream& os, const IntervalVector& x);

enum class Dominance {
    Equal,
    Dominates,
    StrictlyDominates,
    DominatedBy,
    StrictlyDominatedBy,
    NotComparable,
};

std::string_view to_string(Dominance d) noexcept;

// Moore arithmetic. All require finite operands.
Interval add(const Interval& x, const Interval& y);
Interval moore_sub(const Interval& x, const Interval& y);
Interval mul(const Interval& x, const Interval& y);
Interval scalar_mul(double k, const Interval& x);

/// Generalized Hukuhara difference: [min(p.lo-q.lo, p.hi-q.hi), max(...)].
Interval gh_sub(const Interval& p, const Interval& q);

/// Relation of z to w under endpoint-wise dominance (z "dominates" w when z <= w endpoint-wise).
Dominance dominance(const Interval& z, const Interval& w);

/// z <= w endpoint-wise, each comparison relaxed by tol.
bool preceq(const Interval& z, const Interval& w, double tol = 0.0);

/// z < w in the strict dominance sense, with strictness requiring a margin larger than tol.
bool strictly_precedes(const Interval& z, const Interval& w, double tol = 0.0);

/// Set inclusion x subset-or-equal y.
bool subseteq(const Interval& x, const Interval& y);

double width(const Interval& a);
double norm(const Interval& x);
double vec_norm(const IntervalVector& x);

/// Sum over i of v_i * g_i; for n = 1 this is scalar_mul(v_0, g_0).
Interval inner_product(std::span<const double> v, const IntervalVector& g);

/// Endpoint-wise infimum and supremum of a nonempty family.
std::pair<Interval, Interval> family_inf_sup(std::span<const Interval> family);

enum class ElementwiseOp { Add, MooreSub, GhSub };

IntervalVector vec_elementwise(ElementwiseOp op, const IntervalVector& a, const IntervalVector& b);
bool vec_preceq(const IntervalVector& a, const IntervalVector& b, double tol = 0.0);

/// Euclidean norm of a real vector.
double euclidean_norm(std::span<const double> v) noexcept;

}  // namespace ivfopt
