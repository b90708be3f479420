#include "ivfopt/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ivfopt/errors.hpp"
#include "ivfopt/interval.hpp"

namespace ivfopt {

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t dim, std::size_t line, std::size_t column)
        : text_(text), dim_(dim), line_(line), column_(column) {}

    Expr run() {
        Expr e;
        e.dim_ = dim_;
        e.source_ = std::string(trim(text_));
        out_ = &e.code_;
        skip_ws();
        if (at_end()) fail("empty expression");
        parse_expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        if (max_depth_ > Expr::kMaxStack) fail("expression nested too deeply");
        return e;
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column_ + pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void emit(Expr::Op op, int arg = 0, double value = 0.0) {
        out_->push_back({op, arg, value});
        switch (op) {
            case Expr::Op::Const:
            case Expr::Op::Var:
            case Expr::Op::Norm: ++depth_; break;
            case Expr::Op::Add:
            case Expr::Op::Sub:
            case Expr::Op::Mul:
            case Expr::Op::Div: --depth_; break;
            default: break;
        }
        if (depth_ > max_depth_) max_depth_ = depth_;
    }

    void parse_expr() {
        parse_term();
        for (;;) {
            if (accept('+')) {
                parse_term();
                emit(Expr::Op::Add);
            } else if (accept('-')) {
                parse_term();
                emit(Expr::Op::Sub);
            } else {
                return;
            }
        }
    }

    void parse_term() {
        parse_factor();
        for (;;) {
            if (accept('*')) {
                parse_factor();
                emit(Expr::Op::Mul);
            } else if (accept('/')) {
                parse_factor();
                emit(Expr::Op::Div);
            } else {
                return;
            }
        }
    }

    void parse_factor() {
        const bool negate = accept('-');
        parse_atom();
        if (negate) emit(Expr::Op::Neg);
    }

    std::string_view ident() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    double number() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
        if (peek() == 'e' || peek() == 'E') {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        double v = 0.0;
        const auto* first = text_.data() + start;
        const auto* last = text_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            pos_ = start;
            fail("malformed number");
        }
        return v;
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        int v = 0;
        const auto* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
        const auto* last = text_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (start == pos_ || ec != std::errc() || ptr != last) {
            pos_ = start;
            fail("expected integer exponent");
        }
        return v;
    }

    void parse_atom() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            parse_expr();
            expect(')');
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            emit(Expr::Op::Const, 0, number());
            return;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            fail(at_end() ? std::string("unexpected end of expression") : std::string("unexpected '") + c + "'");
        }
        const std::size_t start = pos_;
        const std::string_view name = ident();
        if (name == "abs" || name == "ln" || name == "sqrt") {
            expect('(');
            parse_expr();
            expect(')');
            emit(name == "abs" ? Expr::Op::Abs : name == "ln" ? Expr::Op::Ln : Expr::Op::Sqrt);
            return;
        }
        if (name == "norm") {
            expect('(');
            expect(')');
            emit(Expr::Op::Norm);
            return;
        }
        if (name == "pow") {
            expect('(');
            parse_expr();
            expect(',');
            const int k = integer();
            expect(')');
            emit(Expr::Op::Pow, k);
            return;
        }
        if (name == "y") {
            emit(Expr::Op::Var, 0);
            return;
        }
        if (name.size() > 1 && name[0] == 'y') {
            std::size_t idx = 0;
            const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (ec == std::errc() && ptr == name.data() + name.size() && idx >= 1 && idx <= dim_) {
                emit(Expr::Op::Var, static_cast<int>(idx - 1));
                return;
            }
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::size_t dim_;
    std::size_t line_;
    std::size_t column_;
    std::size_t pos_ = 0;
    std::vector<Expr::Instr>* out_ = nullptr;
    std::size_t depth_ = 0;
    std::size_t max_depth_ = 0;
};

Expr Expr::parse(std::string_view text, std::size_t dim, std::size_t line, std::size_t column) {
    return ExprParser(text, dim, line, column).run();
}

Expr Expr::constant(double value, std::size_t dim) {
    Expr e;
    e.code_.push_back({Op::Const, 0, value});
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    e.source_ = buf;
    e.dim_ = dim;
    return e;
}

double Expr::eval(std::span<const double> y) const noexcept {
    std::array<double, kMaxStack> stack{};
    std::size_t sp = 0;
    for (const Instr& in : code_) {
        switch (in.op) {
            case Op::Const: stack[sp++] = in.value; break;
            case Op::Var: stack[sp++] = y[static_cast<std::size_t>(in.arg)]; break;
            case Op::Norm: stack[sp++] = euclidean_norm(y); break;
            case Op::Add: --sp; stack[sp - 1] += stack[sp]; break;
            case Op::Sub: --sp; stack[sp - 1] -= stack[sp]; break;
            case Op::Mul: --sp; stack[sp - 1] *= stack[sp]; break;
            case Op::Div: --sp; stack[sp - 1] /= stack[sp]; break;
            case Op::Neg: stack[sp - 1] = -stack[sp - 1]; break;
            case Op::Abs: stack[sp - 1] = std::abs(stack[sp - 1]); break;
            case Op::Ln: {
                const double x = stack[sp - 1];
                stack[sp - 1] = x > 0.0 ? std::log(x) : std::numeric_limits<double>::quiet_NaN();
                break;
            }
            case Op::Sqrt: {
                const double x = stack[sp - 1];
                stack[sp - 1] = x >= 0.0 ? std::sqrt(x) : std::numeric_limits<double>::quiet_NaN();
                break;
            }
            case Op::Pow: {
                // Integer powers by repeated multiplication keep y^2 exact where y*y is.
                const double base = stack[sp - 1];
                const int k = in.arg;
                double acc = 1.0;
                for (int i = 0; i < (k < 0 ? -k : k); ++i) acc *= base;
                stack[sp - 1] = k < 0 ? 1.0 / acc : acc;
                break;
            }
        }
    }
    return stack[0];
}

}  // namespace ivfopt
