#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lagfpt/errors.hpp"
#include "lagfpt/sampling.hpp"
#include "support/oracles.hpp"

namespace lagfpt {
namespace {

// Expectation of k_r over every ordered sample of size n from a discrete law.
std::vector<double> exhaustive_expectation(const std::vector<double>& support, const std::vector<double>& prob, int n, int r_max) {
    std::vector<double> expected(static_cast<std::size_t>(r_max) + 1, 0.0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> sample(static_cast<std::size_t>(n));
    while (true) {
        double weight = 1.0;
        for (int i = 0; i < n; ++i) {
            sample[static_cast<std::size_t>(i)] = support[idx[static_cast<std::size_t>(i)]];
            weight *= prob[idx[static_cast<std::size_t>(i)]];
        }
        const auto ks = k_statistics(sample, r_max);
        for (int r = 1; r <= r_max; ++r) expected[static_cast<std::size_t>(r)] += weight * ks[r];
        int pos = 0;
        while (pos < n && ++idx[static_cast<std::size_t>(pos)] == support.size()) idx[static_cast<std::size_t>(pos++)] = 0;
        if (pos == n) break;
    }
    return expected;
}

std::vector<double> true_cumulants(const std::vector<double>& support, const std::vector<double>& prob, int r_max) {
    std::vector<double> raw(static_cast<std::size_t>(r_max) + 1, 0.0);
    for (int m = 0; m <= r_max; ++m)
        for (std::size_t i = 0; i < support.size(); ++i) raw[static_cast<std::size_t>(m)] += prob[i] * std::pow(support[i], m);
    return testing::cumulants_of_moments(raw);
}

TEST(KStatistics, ConstantSample) {
    const std::vector<double> x(7, 2.5);
    const auto ks = k_statistics(x, 6);
    EXPECT_DOUBLE_EQ(ks[1], 2.5);
    for (int r = 2; r <= 6; ++r) EXPECT_EQ(ks[r], 0.0) << r;
}

TEST(KStatistics, SmallExample) {
    const auto ks = k_statistics(std::vector<double>{1.0, 2.0, 3.0}, 3);
    EXPECT_DOUBLE_EQ(ks[1], 2.0);
    EXPECT_DOUBLE_EQ(ks[2], 1.0);
    EXPECT_NEAR(ks[3], 0.0, 1e-15);
}

TEST(KStatistics, ExplicitLowOrderFormulas) {
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> e(1.3);
    std::vector<double> x(37);
    for (auto& v : x) v = e(rng);
    const double n = static_cast<double>(x.size());
    const double mean = testing::sample_mean(x);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double k2 = n / (n - 1) * m2;
    const double k3 = n * n / ((n - 1) * (n - 2)) * m3;
    const double k4 = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3));
    const auto ks = k_statistics(x, 4);
    EXPECT_NEAR(ks[2], k2, 1e-13 * k2);
    EXPECT_NEAR(ks[3], k3, 1e-12 * std::abs(k3));
    EXPECT_NEAR(ks[4], k4, 1e-11 * std::abs(k4));
}

TEST(KStatistics, ExhaustiveUnbiasednessOrdersOneToFour) {
    const std::vector<std::vector<double>> supports{{0.0, 1.0, 3.0}, {-1.0, 0.5, 2.0}, {0.2, 0.4, 1.7}};
    const std::vector<std::vector<double>> probs{{0.2, 0.5, 0.3}, {0.3, 0.3, 0.4}, {0.6, 0.1, 0.3}};
    for (std::size_t law = 0; law < supports.size(); ++law) {
        const auto truth = true_cumulants(supports[law], probs[law], 4);
        for (int n = 3; n <= 5; ++n) {
            const int r_max = std::min(n, 4);
            const auto expected = exhaustive_expectation(supports[law], probs[law], n, r_max);
            for (int r = 1; r <= r_max; ++r)
                EXPECT_NEAR(expected[static_cast<std::size_t>(r)], truth[static_cast<std::size_t>(r)], 1e-12)
                    << "law " << law << " n=" << n << " r=" << r;
        }
    }
}

TEST(KStatistics, ExhaustiveUnbiasednessHighOrders) {
    // Two-point law, sample size equal to the order.
    const std::vector<double> support{0.0, 1.0};
    const std::vector<double> prob{0.35, 0.65};
    const auto truth = true_cumulants(support, prob, 10);
    for (int r = 5; r <= 10; ++r) {
        const auto expected = exhaustive_expectation(support, prob, r, r);
        EXPECT_NEAR(expected[static_cast<std::size_t>(r)], truth[static_cast<std::size_t>(r)], 1e-9) << r;
    }
}

TEST(KStatistics, ShiftInvarianceAboveOrderOne) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(50), shifted(50);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = g(rng);
        shifted[i] = x[i] + 100.0;
    }
    const auto a = k_statistics(x, 6);
    const auto b = k_statistics(shifted, 6);
    EXPECT_NEAR(b[1], a[1] + 100.0, 1e-12);
    for (int r = 2; r <= 6; ++r) EXPECT_NEAR(a[r], b[r], 1e-9 * std::max(1.0, std::abs(a[r]))) << r;
}

TEST(KStatistics, Errors) {
    const std::vector<double> x{1.0, 2.0, 3.0};
    EXPECT_THROW(k_statistics(x, 0), std::domain_error);
    EXPECT_THROW(k_statistics(x, 11), std::domain_error);
    EXPECT_THROW(k_statistics(x, 4), DegenerateSample);
}

}  // namespace
}  // namespace lagfpt
