#pragma once

// Derivative-free maximizers used by the likelihood fit. Objectives return
// -inf (or NaN) for points they reject.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lagfpt {

using Objective = std::function<double(std::span<const double>)>;

struct AnnealingSchedule {
    double temperature0 = 1.0;
    double cooling = 0.97;  // T_j = temperature0 * cooling^j
    int stages = 200;
    int proposals_per_stage = 50;
    std::vector<double> proposal_sd{0.1, 0.1};
};

struct AnnealingTrace {
    int proposals = 0;
    int accepted = 0;
    int rejected_infeasible = 0;
    int improvements = 0;  // times the incumbent best changed
    double final_temperature = 0.0;
};

struct OptimumPoint {
    std::vector<double> x;
    double value = 0.0;
};

struct AnnealingOutcome {
    OptimumPoint best;
    AnnealingTrace trace;
};

/// Metropolis chain with Gaussian proposals and geometric cooling; returns the
/// best point visited (the start included).
AnnealingOutcome simulated_annealing(const Objective& objective, std::span<const double> start,
                                     const AnnealingSchedule& schedule, std::uint64_t seed);

struct NelderMeadOptions {
    std::vector<double> initial_step{0.1, 0.1};
    int max_evaluations = 600;
    double x_tolerance = 1e-10;
    double f_tolerance = 1e-12;  // relative spread of simplex values
};

struct NelderMeadOutcome {
    OptimumPoint best;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead simplex maximization.
NelderMeadOutcome nelder_mead(const Objective& objective, std::span<const double> start,
                              const NelderMeadOptions& options = {});

}  // namespace lagfpt
