#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lagfpt/special_functions.hpp"
#include "support/oracles.hpp"

namespace lagfpt {
namespace {

using testing::laguerre_binomial_sum;

TEST(Laguerre, DegreeZeroIsOne) {
    for (double alpha : {-0.5, 0.0, 2.5})
        for (double t : {0.0, 1.0, 17.0}) EXPECT_EQ(laguerre(0, alpha, t), 1.0);
}

TEST(Laguerre, DegreeOne) { EXPECT_DOUBLE_EQ(laguerre(1, 2.0, 3.0), 0.0); }

TEST(Laguerre, DegreeTwoMatchesBinomialSum) {
    // L_2^{(0)}(1) = C(2,2) - C(2,1) + C(2,0)/2 = 1 - 2 + 0.5
    EXPECT_NEAR(laguerre(2, 0.0, 1.0), -0.5, 1e-14);
    EXPECT_NEAR(laguerre(2, 0.0, 1.0), laguerre_binomial_sum(2, 0.0, 1.0), 1e-14);
}

TEST(Laguerre, RecurrenceAgreesWithBinomialSum) {
    for (double alpha : {-0.5, 0.0, 2.5}) {
        for (int k = 0; k <= 20; ++k) {
            for (double t = 0.0; t <= 50.0; t += 2.5) {
                const double expected = laguerre_binomial_sum(k, alpha, t);
                const double got = laguerre(k, alpha, t);
                EXPECT_NEAR(got, expected, 1e-12 * std::max(1.0, std::abs(expected)))
                    << "k=" << k << " alpha=" << alpha << " t=" << t;
            }
        }
    }
}

TEST(Laguerre, RejectsAlphaAtOrBelowMinusOne) {
    EXPECT_THROW(laguerre(2, -1.0, 0.5), std::domain_error);
    EXPECT_THROW(laguerre(2, -3.0, 0.5), std::domain_error);
}

TEST(Laguerre, CoefficientFormMatchesRecurrence) {
    for (int k = 0; k <= 12; ++k) {
        const auto poly = laguerre_coeffs(k, 1.3);
        EXPECT_EQ(poly.degree(), static_cast<std::size_t>(k));
        for (double t : {0.0, 0.4, 3.0, 9.0}) EXPECT_NEAR(poly(t), laguerre(k, 1.3, t), 1e-9 * (1 + std::abs(poly(t))));
    }
}

TEST(Laguerre, Orthogonality) {
    for (double alpha : {-0.5, 0.0, 2.5}) {
        for (int n = 0; n <= 8; ++n) {
            for (int m = 0; m <= n; ++m) {
                auto integrand = [&](double t) {
                    return std::pow(t, alpha) * std::exp(-t) * laguerre(n, alpha, t) * laguerre(m, alpha, t);
                };
                const double value = testing::integrate_half_line(integrand, {1.0, 5.0, 20.0, 60.0});
                const double expected = n == m ? std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0)) : 0.0;
                EXPECT_NEAR(value, expected, 1e-8) << "alpha=" << alpha << " n=" << n << " m=" << m;
            }
        }
    }
}

TEST(PolyCoeffs, TrimsTrailingZeros) {
    PolyCoeffs p({1.0, 2.0, 0.0, 0.0});
    EXPECT_EQ(p.degree(), 1u);
    EXPECT_DOUBLE_EQ(p(2.0), 5.0);
    EXPECT_EQ(PolyCoeffs({0.0, 0.0}).degree(), 0u);
}

TEST(FallingBinom, Examples) {
    EXPECT_EQ(falling_binom(2.5, 3, 3), 1.0);
    EXPECT_DOUBLE_EQ(falling_binom(2.5, 3, 1), 5.5 * 4.5 / 2.0);
    EXPECT_DOUBLE_EQ(falling_binom(0.0, 4, 0), 1.0);
    EXPECT_THROW(falling_binom(1.0, 2, 3), std::domain_error);
}

TEST(FallingBinom, MatchesGammaRatioWhereThatIsSafe) {
    for (double alpha : {-0.7, 0.0, 1.5, 10.25})
        for (int j = 0; j <= 30; ++j)
            for (int k = 0; k <= j; ++k) {
                const double ratio = std::exp(std::lgamma(alpha + j + 1.0) - std::lgamma(alpha + k + 1.0) - std::lgamma(j - k + 1.0));
                EXPECT_NEAR(falling_binom(alpha, j, k), ratio, 1e-11 * ratio);
            }
}

TEST(FallingBinom, NoOverflowPastGammaRange) {
    // Gamma(alpha + j + 1) alone overflows here; the ratio does not.
    const double v = falling_binom(180.0, 200, 190);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
}

TEST(Factorials, RisingFallingDoubleFactorial) {
    EXPECT_DOUBLE_EQ(falling_factorial(0.5, 3), 0.5 * -0.5 * -1.5);
    EXPECT_DOUBLE_EQ(rising_factorial(2.0, 3), 2.0 * 3.0 * 4.0);
    EXPECT_EQ(double_factorial_2n_minus_3(1), 1.0);
    EXPECT_EQ(double_factorial_2n_minus_3(2), 1.0);
    EXPECT_EQ(double_factorial_2n_minus_3(4), 15.0);
    EXPECT_EQ(binomial(10, 3), 120.0);
    EXPECT_EQ(binomial(64, 32), 1832624140942590534.0);
}

TEST(BellPartial, SingleBlock) {
    const std::vector<double> x{0.3, -1.2, 2.0, 4.5, 0.7};
    for (int n = 1; n <= 5; ++n) EXPECT_DOUBLE_EQ(bell_partial(n, 1, x), x[static_cast<std::size_t>(n - 1)]);
}

TEST(BellPartial, ThreeIntoTwo) {
    const std::vector<double> x{1.7, -0.6};
    EXPECT_DOUBLE_EQ(bell_partial(3, 2, x), 3.0 * 1.7 * -0.6);
    EXPECT_DOUBLE_EQ(testing::bell_partial_enumerated(3, 2, x), 3.0 * 1.7 * -0.6);
}

TEST(BellPartial, RecurrenceMatchesEnumeration) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> x(8);
    for (auto& v : x) v = u(rng);
    for (int n = 1; n <= 8; ++n)
        for (int j = 1; j <= n; ++j) {
            const double expected = testing::bell_partial_enumerated(n, j, x);
            EXPECT_NEAR(bell_partial(n, j, x), expected, 1e-12 * std::max(1.0, std::abs(expected)));
        }
}

TEST(BellPartial, Homogeneity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const double p = u(rng);
        const double q = u(rng);
        std::vector<double> x(8), scaled(8);
        for (std::size_t m = 0; m < x.size(); ++m) {
            x[m] = u(rng);
            scaled[m] = p * std::pow(q, static_cast<double>(m + 1)) * x[m];
        }
        for (int n = 1; n <= 8; ++n)
            for (int j = 1; j <= n; ++j) {
                const double expected = std::pow(p, j) * std::pow(q, n) * bell_partial(n, j, x);
                EXPECT_NEAR(bell_partial(n, j, scaled), expected, 1e-12 * std::max(1.0, std::abs(expected)));
            }
    }
}

TEST(BellPartial, DomainErrors) {
    const std::vector<double> x{1.0, 1.0, 1.0};
    EXPECT_THROW(bell_partial(3, 4, x), std::domain_error);
    EXPECT_THROW(bell_partial(3, 0, x), std::domain_error);
    const BellTable table(x, 3);
    EXPECT_THROW(table(2, 3), std::domain_error);
    EXPECT_EQ(table(0, 0), 1.0);
}

TEST(PartitionPolyG, Examples) {
    const std::vector<double> x1{0.8};
    EXPECT_DOUBLE_EQ(partition_poly_G(1, 2.5, x1), 2.5 * 0.8);
    EXPECT_DOUBLE_EQ(partition_poly_G(2, 1.0, std::vector<double>{1.0, 1.0}), 2.0);
    EXPECT_DOUBLE_EQ(partition_poly_G(3, 2.0, std::vector<double>{1.0, 0.0, 0.0}), 8.0);
}

TEST(PartitionPolyG, AllOnesGivesBellNumbers) {
    // G_n(1; 1, 1, ...) counts set partitions: 1, 2, 5, 15, 52, 203.
    const std::vector<double> ones(6, 1.0);
    const double bell[] = {1, 2, 5, 15, 52, 203};
    for (int n = 1; n <= 6; ++n) EXPECT_DOUBLE_EQ(partition_poly_G(n, 1.0, ones), bell[n - 1]);
}

}  // namespace
}  // namespace lagfpt
