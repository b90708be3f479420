#include <gtest/gtest.h>

#include "support/suites.hpp"

using namespace ivfopt;

TEST(Structure, BlendsOfMembersAreMembers) {
    const auto r = testkit::structure_suite();
    EXPECT_GT(r.convexity_checks, 5000);
    EXPECT_EQ(r.convexity_failures, 0);
    for (const auto& m : r.messages) ADD_FAILURE() << m;
}

TEST(Structure, RegionCornersAreMembers) {
    const auto r = testkit::structure_suite(32, 0);
    EXPECT_GT(r.corner_checks, 50);
    EXPECT_EQ(r.corner_failures, 0);
}

TEST(Structure, ProbePoints) {
    const Ivf f = corpus_get("example_3_1");
    const auto p = testkit::probe_points(f, 11);
    ASSERT_EQ(p.size(), 11u);
    EXPECT_EQ(p.front()[0], -1.0);
    EXPECT_EQ(p.back()[0], 1.0);
    EXPECT_EQ(testkit::probe_points(corpus_get("example_2_1_2d"), 3).at(1), (std::vector<double>{0, 0}));
}

TEST(Structure, EquivalenceAgreesOnCorpus) {
    const auto r = testkit::equivalence_suite();
    EXPECT_GT(r.checks, 50);
    for (const auto& m : r.mismatches) ADD_FAILURE() << m;
}

TEST(Structure, ZeroOptimalityMatchesWeakEfficiency) {
    const auto r = testkit::zero_optimality_suite();
    EXPECT_GT(r.checks, 200);
    for (const auto& m : r.mismatches) ADD_FAILURE() << m;
}
