#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lagfpt/optimize.hpp"

namespace lagfpt {
namespace {

double quadratic(std::span<const double> x) { return -(x[0] - 1.0) * (x[0] - 1.0) - 2.0 * (x[1] + 3.0) * (x[1] + 3.0); }

TEST(NelderMead, Quadratic) {
    const std::vector<double> start{4.0, 4.0};
    const auto r = nelder_mead(quadratic, start);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.best.x[0], 1.0, 1e-5);
    EXPECT_NEAR(r.best.x[1], -3.0, 1e-5);
    EXPECT_NEAR(r.best.value, 0.0, 1e-10);
    EXPECT_LE(r.evaluations, 600);
}

TEST(NelderMead, Rosenbrock) {
    auto f = [](std::span<const double> x) {
        return -(100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2));
    };
    NelderMeadOptions opt;
    opt.max_evaluations = 5000;
    const std::vector<double> start{-1.2, 1.0};
    const auto r = nelder_mead(f, start, opt);
    EXPECT_NEAR(r.best.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.best.x[1], 1.0, 1e-4);
}

TEST(NelderMead, RespectsInfeasibleRegion) {
    // Maximum of the unconstrained quadratic lies outside x0 >= 2.
    auto f = [](std::span<const double> x) { return x[0] < 2.0 ? -INFINITY : quadratic(x); };
    const std::vector<double> start{3.0, 0.0};
    const auto r = nelder_mead(f, start);
    EXPECT_GE(r.best.x[0], 2.0);
    EXPECT_GT(r.best.value, quadratic(start));
    EXPECT_NEAR(r.best.x[0], 2.0, 0.1);
    EXPECT_NEAR(r.best.x[1], -3.0, 0.1);
}

TEST(NelderMead, EvaluationBudget) {
    NelderMeadOptions opt;
    opt.max_evaluations = 20;
    const std::vector<double> start{4.0, 4.0};
    const auto r = nelder_mead(quadratic, start, opt);
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.evaluations, 22);  // a shrink step may finish after the budget check
}

TEST(NelderMead, DimensionMismatch) {
    const std::vector<double> start{1.0, 2.0, 3.0};
    EXPECT_THROW(nelder_mead(quadratic, start), std::invalid_argument);
}

TEST(Annealing, EscapesLocalMaximum) {
    // Local maximum near x = -1.5, global maximum near x = 1.904.
    auto f = [](std::span<const double> x) {
        const double a = x[0] - 2.0, b = x[0] + 1.5;
        return 2.0 * std::exp(-a * a / 2.0) + 1.0 * std::exp(-b * b / 0.2) - 0.05 * (x[0] * x[0] + x[1] * x[1]);
    };
    AnnealingSchedule s;
    s.proposal_sd = {0.5, 0.5};
    const std::vector<double> start{-1.5, 0.0};
    const auto r = simulated_annealing(f, start, s, 42);
    EXPECT_NEAR(r.best.x[0], 1.904, 0.1);
    EXPECT_EQ(r.trace.proposals, s.stages * s.proposals_per_stage);
    EXPECT_GT(r.trace.improvements, 0);
    EXPECT_NEAR(r.trace.final_temperature, std::pow(0.97, 199), 1e-12);
}

TEST(Annealing, ReproducibleAndSeedSensitive) {
    AnnealingSchedule s;
    s.stages = 20;
    const std::vector<double> start{0.0, 0.0};
    const auto a = simulated_annealing(quadratic, start, s, 7);
    const auto b = simulated_annealing(quadratic, start, s, 7);
    const auto c = simulated_annealing(quadratic, start, s, 8);
    EXPECT_EQ(a.best.x, b.best.x);
    EXPECT_EQ(a.trace.accepted, b.trace.accepted);
    EXPECT_NE(a.best.x, c.best.x);
}

TEST(Annealing, NeverWorseThanStartAndCountsInfeasible) {
    auto f = [](std::span<const double> x) { return x[0] > 0.5 ? NAN : quadratic(x); };
    AnnealingSchedule s;
    s.stages = 30;
    const std::vector<double> start{0.0, 0.0};
    const auto r = simulated_annealing(f, start, s, 1);
    EXPECT_GE(r.best.value, quadratic(start));
    EXPECT_LE(r.best.x[0], 0.5);
    EXPECT_GT(r.trace.rejected_infeasible, 0);
}

TEST(Annealing, DimensionMismatch) {
    AnnealingSchedule s;
    s.proposal_sd = {0.1};
    const std::vector<double> start{0.0, 0.0};
    EXPECT_THROW(simulated_annealing(quadratic, start, s, 1), std::invalid_argument);
}

}  // namespace
}  // namespace lagfpt
