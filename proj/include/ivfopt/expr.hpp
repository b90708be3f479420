#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivfopt {

/// Endpoint expression of an interval-valued function.
///
/// A closed mini-language over the variables y1..yn (y is an alias of y1):
///
///     expr   := term (("+" | "-") term)*
///     term   := factor (("*" | "/") factor)*
///     factor := ["-"] atom
///     atom   := number | ident | "abs(" expr ")" | "ln(" expr ")" | "sqrt(" expr ")"
///             | "norm()" | "pow(" expr "," int ")" | "(" expr ")"
///
/// norm() is the Euclidean norm of the whole argument vector. Parsing compiles
/// to a postfix program; evaluation is allocation-free and pure.
class Expr {
public:
    /// Parses `text` for functions of `dim` variables. `line` and `column`
    /// locate the text inside an enclosing document for error messages.
    static Expr parse(std::string_view text, std::size_t dim, std::size_t line = 1, std::size_t column = 1);

    static Expr constant(double value, std::size_t dim = 1);

    /// May return a non-finite value (ln of a non-positive number, sqrt of a
    /// negative one, division by zero).
    double eval(std::span<const double> y) const noexcept;

    const std::string& source() const noexcept { return source_; }
    std::size_t dim() const noexcept { return dim_; }

private:
    enum class Op : std::uint8_t { Const, Var, Norm, Add, Sub, Mul, Div, Neg, Abs, Ln, Sqrt, Pow };

    struct Instr {
        Op op;
        int arg = 0;
        double value = 0.0;
    };

    friend class ExprParser;

    static constexpr std::size_t kMaxStack = 64;

    std::vector<Instr> code_;
    std::string source_;
    std::size_t dim_ = 1;
};

}  // namespace ivfopt
