#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ivfopt/errors.hpp"
#include "ivfopt/expr.hpp"

using ivfopt::Expr;
using ivfopt::ParseError;

namespace {

double eval1(const char* text, double y) {
    const double arg[] = {y};
    return Expr::parse(text, 1).eval(arg);
}

}  // namespace

TEST(Expr, Arithmetic) {
    EXPECT_DOUBLE_EQ(eval1("1 + 2*3", 0), 7);
    EXPECT_DOUBLE_EQ(eval1("(1 + 2)*3", 0), 9);
    EXPECT_DOUBLE_EQ(eval1("8 / 4 / 2", 0), 1);
    EXPECT_DOUBLE_EQ(eval1("1 - 2 - 3", 0), -4);
    EXPECT_DOUBLE_EQ(eval1("-y + 3", 2), 1);
    EXPECT_DOUBLE_EQ(eval1("0.5*y", -4), -2);
    EXPECT_DOUBLE_EQ(eval1("1.5e1", 0), 15);
}

TEST(Expr, Functions) {
    EXPECT_DOUBLE_EQ(eval1("abs(y)", -3), 3);
    EXPECT_DOUBLE_EQ(eval1("pow(y, 2)", -3), 9);
    EXPECT_DOUBLE_EQ(eval1("pow(y - 1, 3)", 3), 8);
    EXPECT_DOUBLE_EQ(eval1("ln(y)", std::exp(2.0)), 2);
    EXPECT_DOUBLE_EQ(eval1("sqrt(abs(y))", -4), 2);
    EXPECT_DOUBLE_EQ(eval1("y1", 5), 5);
}

TEST(Expr, NormAndVariables) {
    const Expr e = Expr::parse("norm() + y2", 2);
    const double p[] = {3, 4};
    EXPECT_DOUBLE_EQ(e.eval(p), 9);
    EXPECT_EQ(e.dim(), 2u);
    EXPECT_EQ(e.source(), "norm() + y2");
}

TEST(Expr, NonFiniteValuesAreReturned) {
    EXPECT_FALSE(std::isfinite(eval1("ln(y)", 0)));
    EXPECT_TRUE(std::isnan(eval1("sqrt(y)", -1)));
    EXPECT_FALSE(std::isfinite(eval1("1 / y", 0)));
}

TEST(Expr, Constant) {
    const double p[] = {123};
    EXPECT_EQ(Expr::constant(2.5).eval(p), 2.5);
}

TEST(Expr, ErrorsCarryPosition) {
    try {
        Expr::parse("1 + * 2", 1, 4, 10);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
        EXPECT_GE(e.column(), 10u);
    }
}

TEST(Expr, RejectsBadInput) {
    EXPECT_THROW(Expr::parse("", 1), ParseError);
    EXPECT_THROW(Expr::parse("y3", 2), ParseError);
    EXPECT_THROW(Expr::parse("foo(y)", 1), ParseError);
    EXPECT_THROW(Expr::parse("(y + 1", 1), ParseError);
    EXPECT_THROW(Expr::parse("y + 1)", 1), ParseError);
    EXPECT_THROW(Expr::parse("pow(y, 1.5)", 1), ParseError);
    EXPECT_THROW(Expr::parse("y y", 1), ParseError);
}
