#include <gtest/gtest.h>

#include <limits>
#include <vector>

#include "ivfopt/errors.hpp"
#include "ivfopt/interval.hpp"
#include "support/gen.hpp"

using namespace ivfopt;
using Gen = ivfopt::testkit::Gen;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(Interval, RejectsReversedAndNaN) {
    EXPECT_THROW(Interval(1.0, 0.0), InvalidIntervalError);
    EXPECT_THROW(Interval(std::nan(""), 0.0), InvalidIntervalError);
    EXPECT_NO_THROW(Interval(-kInf, kInf));
    EXPECT_EQ(Interval::point(3.0), Interval(3.0, 3.0));
    EXPECT_EQ(kZero, Interval(0.0, 0.0));
}

TEST(Interval, Add) {
    EXPECT_EQ(add({1, 2}, {0, 1}), Interval(1, 3));
    EXPECT_EQ(add(kZero, {-4, 7}), Interval(-4, 7));
    EXPECT_EQ(add({-1, 2}, {-2, -1}), Interval(-3, 1));
    EXPECT_THROW(add({0, kInf}, {0, 1}), ExtendedArithmeticError);
}

TEST(Interval, MooreSub) {
    EXPECT_EQ(moore_sub({1, 2}, {0, 1}), Interval(0, 2));
    EXPECT_EQ(moore_sub({-3, 5}, kZero), Interval(-3, 5));
    EXPECT_EQ(moore_sub({1, 1}, {1, 1}), kZero);
    EXPECT_EQ(moore_sub({1, 2}, {1, 2}), Interval(-1, 1));
}

TEST(Interval, Mul) {
    EXPECT_EQ(mul({-1, 2}, {3, 4}), Interval(-4, 8));
    EXPECT_EQ(mul({1, 1}, {-2, 5}), Interval(-2, 5));
    EXPECT_EQ(mul(kZero, {-2, 5}), kZero);
}

TEST(Interval, ScalarMul) {
    EXPECT_EQ(scalar_mul(-1, {2, 5}), Interval(-5, -2));
    EXPECT_EQ(scalar_mul(0, {-2, 5}), kZero);
    EXPECT_EQ(scalar_mul(2, {-1, 3}), Interval(-2, 6));
}

TEST(Interval, GhSub) {
    EXPECT_EQ(gh_sub({5, 7}, {1, 2}), Interval(4, 5));
    EXPECT_EQ(gh_sub({-3, 9}, {-3, 9}), kZero);
    EXPECT_EQ(gh_sub({1, 5}, {2, 3}), Interval(-1, 2));
}

TEST(Interval, GhSubSelfIsZero) {
    Gen g(1);
    for (int i = 0; i < 1000; ++i) {
        const Interval x = g.interval();
        EXPECT_EQ(gh_sub(x, x), kZero);
    }
}

TEST(Interval, Dominance) {
    EXPECT_EQ(dominance({0, 1}, {1, 2}), Dominance::StrictlyDominates);
    EXPECT_EQ(dominance({0, 3}, {1, 2}), Dominance::NotComparable);
    EXPECT_EQ(dominance({1, 2}, {1, 2}), Dominance::Equal);
    EXPECT_EQ(dominance({1, 2}, {0, 1}), Dominance::StrictlyDominatedBy);
    EXPECT_EQ(dominance({0, 1}, Interval(kInf, kInf)), Dominance::StrictlyDominates);
    EXPECT_EQ(dominance({0, 1}, Interval(-kInf, -kInf)), Dominance::StrictlyDominatedBy);
}

TEST(Interval, Preceq) {
    EXPECT_TRUE(preceq({0, 1}, {0, 1}, 0));
    EXPECT_TRUE(preceq({0, 1 + 1e-12}, {0, 1}, 1e-9));
    EXPECT_FALSE(preceq({0, 2}, {0, 1}, 0));
}

TEST(Interval, PreceqIsAPartialOrder) {
    Gen g(2);
    for (int i = 0; i < 2000; ++i) {
        const Interval a = g.dyadic_interval();
        const Interval b = g.dyadic_interval();
        const Interval c = g.dyadic_interval();
        EXPECT_TRUE(preceq(a, a));
        if (preceq(a, b) && preceq(b, c)) EXPECT_TRUE(preceq(a, c));
        EXPECT_EQ(dominance(a, b) == Dominance::Equal, preceq(a, b) && preceq(b, a));
    }
}

TEST(Interval, SubsetWidthNorm) {
    EXPECT_TRUE(subseteq({1, 2}, {0, 3}));
    EXPECT_TRUE(subseteq({0, 3}, {0, 3}));
    EXPECT_FALSE(subseteq({0, 3}, {1, 2}));
    EXPECT_EQ(width({1, 4}), 3);
    EXPECT_EQ(width({2, 2}), 0);
    EXPECT_EQ(width({-2, 2}), 4);
    EXPECT_EQ(norm({-3, 2}), 3);
    EXPECT_EQ(norm(kZero), 0);
    EXPECT_EQ(vec_norm(IntervalVector{{-3, 2}, {0, 1}}), 4);
}

TEST(Interval, InnerProduct) {
    const std::vector<double> v{1, -1};
    EXPECT_EQ(inner_product(v, IntervalVector{{1, 2}, {0, 3}}), Interval(-2, 2));
    const std::vector<double> z{0, 0};
    EXPECT_EQ(inner_product(z, IntervalVector{{1, 2}, {0, 3}}), kZero);
    const std::vector<double> two{2};
    EXPECT_EQ(inner_product(two, IntervalVector{{-1, 1}}), Interval(-2, 2));
    EXPECT_THROW(inner_product(two, IntervalVector{{1, 2}, {0, 3}}), DimensionError);
}

TEST(Interval, FamilyInfSup) {
    const std::vector<Interval> a{{0, 2}, {1, 1}};
    EXPECT_EQ(family_inf_sup(a), (std::make_pair(Interval(0, 1), Interval(1, 2))));
    const std::vector<Interval> one{{-4, 4}};
    EXPECT_EQ(family_inf_sup(one), (std::make_pair(Interval(-4, 4), Interval(-4, 4))));
    const std::vector<Interval> b{{-1, 0}, {0, 3}, {2, 2}};
    EXPECT_EQ(family_inf_sup(b), (std::make_pair(Interval(-1, 0), Interval(2, 3))));
    EXPECT_THROW(family_inf_sup(std::vector<Interval>{}), EmptyFamilyError);
}

TEST(Interval, FamilyInfSupBoundsEveryMember) {
    Gen g(3);
    for (int i = 0; i < 500; ++i) {
        std::vector<Interval> fam(static_cast<std::size_t>(g.integer(1, 12)));
        for (auto& x : fam) x = g.interval();
        const auto [inf, sup] = family_inf_sup(fam);
        for (const auto& x : fam) {
            EXPECT_TRUE(preceq(inf, x));
            EXPECT_TRUE(preceq(x, sup));
        }
    }
}

TEST(Interval, Elementwise) {
    const IntervalVector p{{1, 2}, {-1, 4}};
    EXPECT_EQ(vec_elementwise(ElementwiseOp::GhSub, p, p), IntervalVector::zeros(2));
    const IntervalVector a{{0, 1}}, b{{1, 2}}, c{{5, 7}};
    EXPECT_EQ(vec_elementwise(ElementwiseOp::Add, a, b), (IntervalVector{{1, 3}}));
    EXPECT_EQ(vec_elementwise(ElementwiseOp::GhSub, c, b), (IntervalVector{{4, 5}}));
    EXPECT_THROW(vec_elementwise(ElementwiseOp::Add, p, a), DimensionError);
    EXPECT_TRUE(vec_preceq(IntervalVector{{0, 1}, {0, 0}}, IntervalVector{{0, 2}, {1, 1}}));
    EXPECT_FALSE(vec_preceq(IntervalVector{{0, 1}, {2, 2}}, IntervalVector{{0, 2}, {1, 1}}));
}
