#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "ivfopt/kernels.hpp"
#include "support/gen.hpp"

using ivfopt::kernels::RegionBounds;
using ivfopt::kernels::Table;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 1000, 1003};

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

struct Data {
    std::vector<double> t, a_lo, a_hi, b_lo, b_hi, dist;
};

/// Random arrays; with `edges`, sprinkles zeros, infinities and NaNs.
Data make_data(std::size_t n, std::uint64_t seed, bool edges) {
    ivfopt::testkit::Gen g(seed);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = g.real(-1.0, 1.0);
        const double a = g.real(-2.0, 2.0), b = g.real(-2.0, 2.0);
        const double c = g.real(-2.0, 2.0), e = g.real(-2.0, 2.0);
        d.t.push_back(g.integer(0, 9) == 0 ? 0.0 : t);
        d.a_lo.push_back(std::min(a, b));
        d.a_hi.push_back(std::max(a, b));
        d.b_lo.push_back(std::min(c, e));
        d.b_hi.push_back(std::max(c, e));
        d.dist.push_back(std::abs(d.t.back()));
    }
    if (edges) {
        for (std::size_t i = 0; i < n; ++i) {
            switch (g.integer(0, 11)) {
                case 0: d.a_lo[i] = -kInf; break;
                case 1: d.b_hi[i] = kInf; break;
                case 2: d.a_hi[i] = kNaN; break;
                case 3: d.b_lo[i] = kNaN; break;
                case 4: d.t[i] = -0.0; break;
                default: break;
            }
        }
    }
    return d;
}

void expect_same_bounds(const RegionBounds& x, const RegionBounds& y) {
    EXPECT_EQ(bits(x.lo_min), bits(y.lo_min));
    EXPECT_EQ(bits(x.lo_max), bits(y.lo_max));
    EXPECT_EQ(bits(x.hi_min), bits(y.hi_min));
    EXPECT_EQ(bits(x.hi_max), bits(y.hi_max));
}

class KernelEquivalence : public ::testing::TestWithParam<bool> {
protected:
    void SetUp() override {
        vec_ = ivfopt::kernels::avx2();
        if (vec_ == nullptr) GTEST_SKIP() << "AVX2 not available";
    }

    const Table& ref_ = ivfopt::kernels::scalar();
    const Table* vec_ = nullptr;
};

}  // namespace

TEST(Kernels, ActiveTableIsKnown) {
    const auto& t = ivfopt::kernels::active();
    EXPECT_TRUE(t.name == "scalar" || t.name == "avx2");
}

TEST(Kernels, ScalarRegionReduceByHand) {
    const std::vector<double> t{0.5, -0.5, 0.0};
    const std::vector<double> lo{0.25, 0.25, -100.0};
    const std::vector<double> hi{0.5, 0.5, -100.0};
    const RegionBounds r = ivfopt::kernels::scalar().region_reduce(t.data(), lo.data(), hi.data(), 0.0, 0.0, 3);
    EXPECT_DOUBLE_EQ(r.lo_max, 0.5);
    EXPECT_DOUBLE_EQ(r.hi_max, 1.0);
    EXPECT_DOUBLE_EQ(r.lo_min, -1.0);
    EXPECT_DOUBLE_EQ(r.hi_min, -0.5);
}

TEST(Kernels, ScalarFirstIndexScans) {
    const auto& k = ivfopt::kernels::scalar();
    const std::vector<double> w_lo{1, 0, -1}, w_hi{2, 2, 0};
    EXPECT_EQ(k.first_fixed_not_preceq(0.0, 1.0, w_lo.data(), w_hi.data(), 0.0, 3), 2u);
    EXPECT_EQ(k.first_strictly_below_fixed(w_lo.data(), w_hi.data(), 0.0, 1.0, 0.0, 3), 2u);
    EXPECT_EQ(k.first_strictly_below_fixed(w_lo.data(), w_hi.data(), -5.0, -5.0, 0.0, 3), 3u);
    const std::vector<double> dist{1, 2, 0}, d_lo{-3, -1, -50}, d_hi{1, 1, -50};
    EXPECT_DOUBLE_EQ(k.lower_lipschitz_max(dist.data(), d_lo.data(), d_hi.data(), 3), 3.0);
}

TEST_P(KernelEquivalence, GhSubFixed) {
    for (const std::size_t n : kSizes) {
        const Data d = make_data(n, 100 + n, GetParam());
        std::vector<double> r_lo(n), r_hi(n), v_lo(n), v_hi(n);
        ref_.gh_sub_fixed(d.a_lo.data(), d.a_hi.data(), 0.25, 0.75, r_lo.data(), r_hi.data(), n);
        vec_->gh_sub_fixed(d.a_lo.data(), d.a_hi.data(), 0.25, 0.75, v_lo.data(), v_hi.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_EQ(bits(r_lo[i]), bits(v_lo[i])) << "n=" << n << " i=" << i;
            ASSERT_EQ(bits(r_hi[i]), bits(v_hi[i])) << "n=" << n << " i=" << i;
        }
    }
}

TEST_P(KernelEquivalence, RegionReduce) {
    for (const std::size_t n : kSizes) {
        const Data d = make_data(n, 200 + n, GetParam());
        for (const double c : {0.0, 0.5, 2.0}) {
            for (const double tol : {0.0, 1e-9}) {
                expect_same_bounds(ref_.region_reduce(d.t.data(), d.a_lo.data(), d.a_hi.data(), c, tol, n),
                                   vec_->region_reduce(d.t.data(), d.a_lo.data(), d.a_hi.data(), c, tol, n));
            }
        }
    }
}

TEST_P(KernelEquivalence, FirstMemberViolation) {
    for (const std::size_t n : kSizes) {
        const Data d = make_data(n, 300 + n, GetParam());
        for (const double g : {-0.5, 0.0, 1.5}) {
            for (const double c : {0.0, 1.0, 4.0}) {
                EXPECT_EQ(ref_.first_member_violation_1d(d.t.data(), d.a_lo.data(), d.a_hi.data(), g, g + 0.5, c,
                                                         1e-9, n),
                          vec_->first_member_violation_1d(d.t.data(), d.a_lo.data(), d.a_hi.data(), g, g + 0.5, c,
                                                          1e-9, n));
            }
        }
    }
}

TEST_P(KernelEquivalence, DominanceScans) {
    for (const std::size_t n : kSizes) {
        const Data d = make_data(n, 400 + n, GetParam());
        for (const double tol : {0.0, 1e-9, 3.0}) {
            EXPECT_EQ(ref_.first_not_preceq(d.a_lo.data(), d.a_hi.data(), d.b_lo.data(), d.b_hi.data(), tol, n),
                      vec_->first_not_preceq(d.a_lo.data(), d.a_hi.data(), d.b_lo.data(), d.b_hi.data(), tol, n));
            for (const double z : {-3.0, 0.0, 2.5}) {
                EXPECT_EQ(ref_.first_fixed_not_preceq(z, z + 0.5, d.b_lo.data(), d.b_hi.data(), tol, n),
                          vec_->first_fixed_not_preceq(z, z + 0.5, d.b_lo.data(), d.b_hi.data(), tol, n));
                EXPECT_EQ(ref_.first_strictly_below_fixed(d.b_lo.data(), d.b_hi.data(), z, z + 0.5, tol, n),
                          vec_->first_strictly_below_fixed(d.b_lo.data(), d.b_hi.data(), z, z + 0.5, tol, n));
            }
        }
    }
}

TEST_P(KernelEquivalence, LowerLipschitzMax) {
    for (const std::size_t n : kSizes) {
        const Data d = make_data(n, 500 + n, GetParam());
        EXPECT_EQ(bits(ref_.lower_lipschitz_max(d.dist.data(), d.a_lo.data(), d.a_hi.data(), n)),
                  bits(vec_->lower_lipschitz_max(d.dist.data(), d.a_lo.data(), d.a_hi.data(), n)));
    }
}

INSTANTIATE_TEST_SUITE_P(Data, KernelEquivalence, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "Edges" : "Finite"; });
