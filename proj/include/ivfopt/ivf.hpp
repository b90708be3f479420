#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivfopt/expr.hpp"
#include "ivfopt/grid.hpp"
#include "ivfopt/interval.hpp"

namespace ivfopt {

struct Piece {
    Box region;
    Expr lower;
    Expr upper;
};

/// Interval-valued function y -> [lower(y), upper(y)] over a box domain.
///
/// Either piecewise (parsed from the text format) or derived pointwise from
/// other functions (sum, gH-difference, scaling, linear maps). Values are
/// immutable and cheap to copy.
///
/// Text format, one directive per line, `#` starts a comment:
///
///     ivf <name> dim=<n>
///     domain <lo1> <hi1> ... <lon> <hin>
///     piece <lo1> <hi1> ... :: <lower-expr> :: <upper-expr>
///
/// Bounds are numbers or `inf`/`-inf`. A lower bound may be prefixed by `(`
/// and an upper bound suffixed by `)` to make that end open (`[`/`]` spell
/// the closed default). The first piece containing a point defines the value.
class Ivf {
public:
    /// Parses and validates. Validation samples the domain (including every
    /// finite piece boundary) and rejects gaps, lower > upper, non-finite
    /// values and overlapping pieces that disagree by more than 1e-9.
    static Ivf parse(std::string_view text);

    /// Builds and validates a piecewise function.
    static Ivf piecewise(std::string name, Box domain, std::vector<Piece> pieces);

    static Ivf constant(std::string name, Box domain, const Interval& value);

    /// y -> sum_i y_i g_i over `domain`.
    static Ivf linear(std::string name, Box domain, const IntervalVector& g);

    const std::string& name() const noexcept;
    std::size_t dim() const noexcept;
    const Box& domain() const noexcept;

    bool contains(std::span<const double> y) const noexcept;

    /// Throws OutOfDomainError, DomainCoverageError, EvaluationError or
    /// EndpointOrderViolation with y as witness.
    Interval eval(std::span<const double> y) const;
    Interval eval(double y) const { return eval(std::span<const double>(&y, 1)); }

    /// Endpoints at every grid point.
    void eval_grid(const Grid& grid, std::vector<double>& lo, std::vector<double>& hi) const;

    /// Finite piece boundary coordinates along `axis`, sorted and unique.
    /// Derived functions report the union over their operands.
    std::vector<double> breakpoints(std::size_t axis) const;

    /// Pieces of a piecewise function; empty for derived ones.
    std::span<const Piece> pieces() const noexcept;

    struct Node;

private:
    explicit Ivf(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    friend Ivf sum(const Ivf&, const Ivf&);
    friend Ivf gh_diff(const Ivf&, const Ivf&);
    friend Ivf scaled(double, const Ivf&);

    std::shared_ptr<const Node> node_;
};

/// Pointwise Moore sum f1(y) + f2(y). Throws DomainMismatch unless the domains agree.
Ivf sum(const Ivf& f1, const Ivf& f2);

/// Pointwise gH-difference f2(y) gH-minus f1(y). Throws DomainMismatch unless the domains agree.
Ivf gh_diff(const Ivf& f2, const Ivf& f1);

/// Pointwise k * f(y).
Ivf scaled(double k, const Ivf& f);

inline Ivf negate(const Ivf& f) { return scaled(-1.0, f); }

}  // namespace ivfopt
