#include "ivfopt/ivf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ivfopt/errors.hpp"

namespace ivfopt {

struct Ivf::Node {
    enum class Kind { Piecewise, Sum, GhDiff, Scaled, Linear };

    Kind kind = Kind::Piecewise;
    std::string name;
    Box domain;
    std::vector<Piece> pieces;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    double k = 1.0;
    std::optional<IntervalVector> g;
};

namespace {

constexpr double kOverlapTol = 1e-9;

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

std::vector<double> to_vec(std::span<const double> y) { return {y.begin(), y.end()}; }

const Piece* find_piece(const std::vector<Piece>& pieces, std::span<const double> y) {
    for (const Piece& p : pieces) {
        if (box_contains(p.region, y)) return &p;
    }
    return nullptr;
}

Interval piece_value(const Piece& p, std::span<const double> y) {
    const double lo = p.lower.eval(y);
    const double hi = p.upper.eval(y);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw EvaluationError("endpoint expression is not finite at " + describe(y), to_vec(y));
    }
    if (lo > hi) {
        std::ostringstream os;
        os.precision(12);
        os << "lower endpoint " << lo << " exceeds upper endpoint " << hi << " at " << describe(y);
        throw EndpointOrderViolation(os.str(), to_vec(y));
    }
    return Interval(lo, hi);
}

Interval eval_node(const Ivf::Node& n, std::span<const double> y) {
    switch (n.kind) {
        case Ivf::Node::Kind::Piecewise: {
            const Piece* p = find_piece(n.pieces, y);
            if (p == nullptr) {
                throw DomainCoverageError("no piece of '" + n.name + "' covers " + describe(y), to_vec(y));
            }
            return piece_value(*p, y);
        }
        case Ivf::Node::Kind::Sum: return add(eval_node(*n.a, y), eval_node(*n.b, y));
        case Ivf::Node::Kind::GhDiff: return gh_sub(eval_node(*n.a, y), eval_node(*n.b, y));
        case Ivf::Node::Kind::Scaled: return scalar_mul(n.k, eval_node(*n.a, y));
        case Ivf::Node::Kind::Linear: return inner_product(y, *n.g);
    }
    return kZero;
}

void collect_breakpoints(const Ivf::Node& n, std::size_t axis, std::vector<double>& out) {
    for (const Piece& p : n.pieces) {
        for (const double v : {p.region[axis].lo, p.region[axis].hi}) {
            if (std::isfinite(v)) out.push_back(v);
        }
    }
    if (n.a) collect_breakpoints(*n.a, axis, out);
    if (n.b) collect_breakpoints(*n.b, axis, out);
}

std::vector<double> axis_validation_samples(const Bound& b, const std::vector<double>& breaks, std::size_t n) {
    const Box one{b};
    const Grid g = make_grid(one, GridSpec{n, false, 0, 10.0});
    std::vector<double> out = g.coords();
    for (const double v : breaks) {
        if (b.contains(v)) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void validate(const Ivf::Node& n) {
    const std::size_t dim = n.domain.size();
    const std::size_t per_axis = dim == 1 ? 2001 : std::min<std::size_t>(default_points(dim), 41);
    std::vector<std::vector<double>> axes(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<double> breaks;
        collect_breakpoints(n, d, breaks);
        axes[d] = axis_validation_samples(n.domain[d], breaks, per_axis);
    }
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();

    std::vector<double> y(dim);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rem = k;
        for (std::size_t d = dim; d-- > 0;) {
            y[d] = axes[d][rem % axes[d].size()];
            rem /= axes[d].size();
        }
        if (!box_contains(n.domain, y)) continue;
        const Piece* first = find_piece(n.pieces, y);
        if (first == nullptr) {
            throw DomainCoverageError("pieces of '" + n.name + "' do not cover " + describe(y), y);
        }
        const Interval v = piece_value(*first, y);
        for (const Piece& p : n.pieces) {
            if (&p == first || !box_contains(p.region, y)) continue;
            const double lo = p.lower.eval(y);
            const double hi = p.upper.eval(y);
            const double scale = std::max({1.0, std::abs(v.lo()), std::abs(v.hi())});
            if (!(std::abs(lo - v.lo()) <= kOverlapTol * scale) || !(std::abs(hi - v.hi()) <= kOverlapTol * scale)) {
                throw PieceConflict("overlapping pieces of '" + n.name + "' disagree at " + describe(y), y);
            }
        }
    }
}

// ---- text format ----

struct Line {
    std::size_t number;
    std::string text;
};

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view s, std::size_t base_column) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back({s.substr(start, i - start), base_column + start});
    }
    return out;
}

double parse_number(const Token& tok, std::size_t line) {
    std::string_view t = tok.text;
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ParseError("expected a number, got '" + std::string(tok.text) + "'", line, tok.column);
    }
    return v;
}

Box parse_bounds(const std::vector<Token>& toks, std::size_t first, std::size_t dim, std::size_t line,
                 std::size_t end_column) {
    if (toks.size() - first != 2 * dim) {
        const std::size_t col = toks.size() > first + 2 * dim ? toks[first + 2 * dim].column : end_column;
        throw ParseError("expected " + std::to_string(2 * dim) + " bounds, got " + std::to_string(toks.size() - first),
                         line, col);
    }
    Box box;
    for (std::size_t d = 0; d < dim; ++d) {
        Token lo = toks[first + 2 * d];
        Token hi = toks[first + 2 * d + 1];
        Bound b{};
        if (!lo.text.empty() && (lo.text.front() == '(' || lo.text.front() == '[')) {
            b.lo_open = lo.text.front() == '(';
            lo.text.remove_prefix(1);
            ++lo.column;
        }
        if (!hi.text.empty() && (hi.text.back() == ')' || hi.text.back() == ']')) {
            b.hi_open = hi.text.back() == ')';
            hi.text.remove_suffix(1);
        }
        b.lo = parse_number(lo, line);
        b.hi = parse_number(hi, line);
        if (b.lo > b.hi) throw ParseError("lower bound exceeds upper bound", line, lo.column);
        box.push_back(b);
    }
    return box;
}

}  // namespace

Ivf Ivf::parse(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++number;
        if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (!strip(raw).empty()) lines.push_back({number, std::string(raw)});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (lines.empty()) throw ParseError("empty document: expected 'ivf <name> dim=<n>'", 1, 1);

    const Line& head = lines[0];
    const auto head_toks = tokenize(head.text, 1);
    if (head_toks.size() != 3 || head_toks[0].text != "ivf") {
        throw ParseError("expected 'ivf <name> dim=<n>'", head.number, head_toks.empty() ? 1 : head_toks[0].column);
    }
    const std::string name(head_toks[1].text);
    const std::string_view dim_tok = head_toks[2].text;
    std::size_t dim = 0;
    if (dim_tok.substr(0, 4) != "dim=") throw ParseError("expected 'dim=<n>'", head.number, head_toks[2].column);
    {
        const auto [ptr, ec] = std::from_chars(dim_tok.data() + 4, dim_tok.data() + dim_tok.size(), dim);
        if (ec != std::errc() || ptr != dim_tok.data() + dim_tok.size() || dim == 0) {
            throw ParseError("dimension must be a positive integer", head.number, head_toks[2].column + 4);
        }
    }

    if (lines.size() < 2) throw ParseError("missing 'domain' line", head.number + 1, 1);
    const Line& dom = lines[1];
    const auto dom_toks = tokenize(dom.text, 1);
    if (dom_toks.empty() || dom_toks[0].text != "domain") {
        throw ParseError("expected 'domain' line", dom.number, dom_toks.empty() ? 1 : dom_toks[0].column);
    }
    Box domain = parse_bounds(dom_toks, 1, dim, dom.number, dom.text.size() + 1);

    std::vector<Piece> pieces;
    for (std::size_t li = 2; li < lines.size(); ++li) {
        const Line& ln = lines[li];
        const std::string_view s = ln.text;
        const std::size_t sep1 = s.find("::");
        const std::size_t sep2 = sep1 == std::string_view::npos ? sep1 : s.find("::", sep1 + 2);
        const auto toks = tokenize(s.substr(0, sep1), 1);
        if (toks.empty() || toks[0].text != "piece") {
            throw ParseError("expected 'piece'", ln.number, toks.empty() ? 1 : toks[0].column);
        }
        if (sep1 == std::string_view::npos || sep2 == std::string_view::npos) {
            throw ParseError("expected 'piece <bounds> :: <lower> :: <upper>'", ln.number, s.size() + 1);
        }
        if (s.find("::", sep2 + 2) != std::string_view::npos) {
            throw ParseError("too many '::' separators", ln.number, s.find("::", sep2 + 2) + 1);
        }
        Box region = parse_bounds(toks, 1, dim, ln.number, sep1 + 1);
        Expr lower = Expr::parse(s.substr(sep1 + 2, sep2 - sep1 - 2), dim, ln.number, sep1 + 3);
        Expr upper = Expr::parse(s.substr(sep2 + 2), dim, ln.number, sep2 + 3);
        pieces.push_back({std::move(region), std::move(lower), std::move(upper)});
    }
    if (pieces.empty()) throw ParseError("no pieces", lines.back().number + 1, 1);

    return piecewise(name, std::move(domain), std::move(pieces));
}

Ivf Ivf::piecewise(std::string name, Box domain, std::vector<Piece> pieces) {
    if (domain.empty()) throw DimensionError("domain must have at least one coordinate");
    if (pieces.empty()) throw DomainCoverageError("function '" + name + "' has no pieces", {});
    for (const Piece& p : pieces) {
        if (p.region.size() != domain.size() || p.lower.dim() != domain.size() || p.upper.dim() != domain.size()) {
            throw DimensionError("piece dimension does not match the domain");
        }
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Piecewise;
    n->name = std::move(name);
    n->domain = std::move(domain);
    n->pieces = std::move(pieces);
    validate(*n);
    return Ivf(std::move(n));
}

Ivf Ivf::constant(std::string name, Box domain, const Interval& value) {
    const std::size_t dim = domain.size();
    Box everywhere(dim, Bound{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()});
    std::vector<Piece> pieces;
    pieces.push_back({everywhere, Expr::constant(value.lo(), dim), Expr::constant(value.hi(), dim)});
    auto n = std::make_shared<Node>();
    n->name = std::move(name);
    n->domain = std::move(domain);
    n->pieces = std::move(pieces);
    return Ivf(std::move(n));
}

Ivf Ivf::linear(std::string name, Box domain, const IntervalVector& g) {
    if (g.size() != domain.size()) throw DimensionError("linear map dimension does not match the domain");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Linear;
    n->name = std::move(name);
    n->domain = std::move(domain);
    n->g = g;
    return Ivf(std::move(n));
}

const std::string& Ivf::name() const noexcept { return node_->name; }
std::size_t Ivf::dim() const noexcept { return node_->domain.size(); }
const Box& Ivf::domain() const noexcept { return node_->domain; }

bool Ivf::contains(std::span<const double> y) const noexcept { return box_contains(node_->domain, y); }

Interval Ivf::eval(std::span<const double> y) const {
    if (y.size() != dim()) {
        throw DimensionError("point has " + std::to_string(y.size()) + " coordinates, function '" + name() +
                             "' expects " + std::to_string(dim()));
    }
    if (!contains(y)) throw OutOfDomainError(describe(y) + " is outside the domain of '" + name() + "'", to_vec(y));
    return eval_node(*node_, y);
}

void Ivf::eval_grid(const Grid& grid, std::vector<double>& lo, std::vector<double>& hi) const {
    const std::size_t n = grid.size();
    lo.resize(n);
    hi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Interval v = eval(grid.point(i));
        lo[i] = v.lo();
        hi[i] = v.hi();
    }
}

std::vector<double> Ivf::breakpoints(std::size_t axis) const {
    std::vector<double> out;
    if (axis < dim()) collect_breakpoints(*node_, axis, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::span<const Piece> Ivf::pieces() const noexcept { return node_->pieces; }

namespace {

void require_same_domain(const Ivf& f1, const Ivf& f2) {
    if (f1.domain() != f2.domain()) {
        throw DomainMismatch("functions '" + f1.name() + "' and '" + f2.name() + "' have different domains");
    }
}

}  // namespace

Ivf sum(const Ivf& f1, const Ivf& f2) {
    require_same_domain(f1, f2);
    auto n = std::make_shared<Ivf::Node>();
    n->kind = Ivf::Node::Kind::Sum;
    n->name = "sum(" + f1.name() + "," + f2.name() + ")";
    n->domain = f1.domain();
    n->a = f1.node_;
    n->b = f2.node_;
    return Ivf(std::move(n));
}

Ivf gh_diff(const Ivf& f2, const Ivf& f1) {
    require_same_domain(f1, f2);
    auto n = std::make_shared<Ivf::Node>();
    n->kind = Ivf::Node::Kind::GhDiff;
    n->name = "ghdiff(" + f2.name() + "," + f1.name() + ")";
    n->domain = f2.domain();
    n->a = f2.node_;
    n->b = f1.node_;
    return Ivf(std::move(n));
}

Ivf scaled(double k, const Ivf& f) {
    if (!std::isfinite(k)) throw ExtendedArithmeticError("scale factor must be finite");
    auto n = std::make_shared<Ivf::Node>();
    n->kind = Ivf::Node::Kind::Scaled;
    n->name = k == -1.0 ? "neg(" + f.name() + ")" : "scaled(" + f.name() + ")";
    n->domain = f.domain();
    n->k = k;
    n->a = f.node_;
    return Ivf(std::move(n));
}

}  // namespace ivfopt
