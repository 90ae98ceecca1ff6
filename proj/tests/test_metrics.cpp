#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "stepmath/metrics.hpp"

using namespace stepmath;

namespace {

std::vector<int> random_scores(std::mt19937_64& rng, std::size_t n) {
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(rng() % 11);
    return v;
}

bool constant(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; });
}

}  // namespace

TEST(Metrics, HandComputedPair) {
    const std::vector a{10, 0};
    const std::vector g{0, 10};
    const auto m = slice_metrics(a, g);
    EXPECT_DOUBLE_EQ(m.corr, -100.0);
    EXPECT_DOUBLE_EQ(m.mse, 100.0);
    EXPECT_DOUBLE_EQ(m.or_rate, 0.0);
    EXPECT_DOUBLE_EQ(m.avg_s, 50.0);
    EXPECT_DOUBLE_EQ(m.gold_avg_s, 50.0);
    EXPECT_FALSE(m.corr_undefined);
}

TEST(Metrics, SmallWorkedExample) {
    // d = (1, -1, 0, 2): sum d^2 = 6 over 4 records.
    const auto m = slice_metrics(std::vector{7, 5, 10, 4}, std::vector{6, 6, 10, 2});
    EXPECT_DOUBLE_EQ(m.mse, 1.5);
    EXPECT_DOUBLE_EQ(m.or_rate, 25.0);
    EXPECT_DOUBLE_EQ(m.avg_s, 65.0);
    EXPECT_DOUBLE_EQ(m.gold_avg_s, 60.0);
    // Centred sums: cross 24, x 21, y 32.
    EXPECT_NEAR(m.corr, 100.0 * 24.0 / std::sqrt(21.0 * 32.0), 1e-9);
}

TEST(MetricsProperty, SelfComparisonIdentities) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto x = random_scores(rng, 2 + rng() % 40);
        if (constant(x)) continue;
        const auto m = slice_metrics(x, x);
        ASSERT_EQ(m.corr, 100.0);
        ASSERT_EQ(m.mse, 0.0);
        ASSERT_EQ(m.or_rate, 100.0);
    }
}

TEST(MetricsProperty, BoundsAndSymmetryOverRandomPairs) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto n = 1 + rng() % 30;
        const auto x = random_scores(rng, n);
        const auto y = random_scores(rng, n);
        const auto m = slice_metrics(x, y);
        ASSERT_GE(m.mse, 0.0);
        ASSERT_LE(m.mse, 100.0);
        ASSERT_GE(m.or_rate, 0.0);
        ASSERT_LE(m.or_rate, 100.0);
        ASSERT_GE(m.corr, -100.0);
        ASSERT_LE(m.corr, 100.0);
        ASSERT_GE(m.avg_s, 0.0);
        ASSERT_LE(m.avg_s, 100.0);
        ASSERT_EQ(m.mse, slice_metrics(y, x).mse);
        ASSERT_EQ(m.mse == 0.0, m.or_rate == 100.0);
        ASSERT_EQ(m.corr_undefined, constant(x) || constant(y));
    }
}

TEST(Metrics, ConstantVectorFlagsCorrelation) {
    const auto m = slice_metrics(std::vector{10, 10, 10}, std::vector{0, 5, 10});
    EXPECT_TRUE(m.corr_undefined);
    EXPECT_EQ(m.corr, 0.0);
    EXPECT_DOUBLE_EQ(m.avg_s, 100.0);
}

TEST(Metrics, InputErrors) {
    EXPECT_THROW(slice_metrics(std::vector{1, 2}, std::vector{1}), Error);
    EXPECT_THROW(slice_metrics(std::vector<int>{}, std::vector<int>{}), Error);
    EXPECT_THROW(slice_metrics(std::vector{11}, std::vector{1}), Error);
}

TEST(Metrics, SlicesPartitionTheRecords) {
    std::mt19937_64 rng(8);
    const std::size_t k = 300;
    const auto a = random_scores(rng, k);
    const auto g = random_scores(rng, k);
    std::vector<SliceKey> keys(k);
    for (auto& key : keys) {
        key.problem_type = kProblemTypes[rng() % 3];
        key.category = kPrimaryCategories[rng() % kPrimaryCategories.size()];
        key.difficulty = kDifficulties[rng() % 3];
    }
    const auto r = compute_metrics(a, g, keys);
    for (const auto* slices : {&r.by_problem_type, &r.by_category, &r.by_difficulty}) {
        std::size_t total = 0;
        double weighted_avg = 0.0;
        for (const auto& [name, m] : *slices) {
            total += m.count;
            weighted_avg += m.avg_s * static_cast<double>(m.count);
        }
        EXPECT_EQ(total, k);
        EXPECT_NEAR(weighted_avg / static_cast<double>(k), r.overall.avg_s, 1e-9);
    }
    EXPECT_EQ(r.by_problem_type.at(0).first, "calculation");
    EXPECT_THROW(compute_metrics(a, g, std::span(keys).first(3)), Error);
}

TEST(Metrics, EmptySlicesAreOmitted) {
    std::vector<SliceKey> keys(2);
    const auto r = compute_metrics(std::vector{3, 4}, std::vector{3, 5}, keys);
    EXPECT_EQ(r.by_problem_type.size(), 1u);
    EXPECT_EQ(r.by_difficulty.size(), 1u);
}
