#pragma once

// Estimation of (mu, sigma^2) of a GBM from first-passage-time data, with the
// threshold S and start y0 known.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lagfpt/optimize.hpp"
#include "lagfpt/sampling.hpp"

namespace lagfpt {

enum class FitMethod { Mle, Mm };
std::string_view to_string(FitMethod m) noexcept;

/// Contribution of an observation where the approximate density is not positive.
inline constexpr double kDensityFloor = 1e-300;

struct FitDiagnostics {
    /// Observations where the fitted g_n was <= 0 (mle only).
    int nonpositive_points = 0;
    AnnealingTrace annealing{};
    double start_loglik = 0.0;
    double annealing_loglik = 0.0;
    int polish_evaluations = 0;
    /// Distance in (mu, ln sigma^2) between the annealing incumbent and the polished point.
    double polish_distance = 0.0;
    bool polish_converged = true;
    /// Set when the polish moved more than the configured distance.
    bool non_convergence_flag = false;
    /// |h_hat_n - 1| of the expansion at the estimate.
    double h_hat_deviation = 0.0;
};

struct FitResult {
    double mu_hat = 0.0;
    double sigma2_hat = 0.0;
    FitMethod method = FitMethod::Mm;
    std::optional<int> n_used;
    std::optional<double> loglik;
    std::optional<std::uint64_t> seed;
    FitDiagnostics diagnostics{};
};

struct LogLikelihood {
    double value = 0.0;
    int nonpositive_points = 0;
};

/// sum_i ln g_n(T_i; mu, sigma^2), with g_n built from the analytic IG moments of
/// the candidate and its default gamma reference. Points where g_n <= 0 add
/// ln(kDensityFloor). Throws InvalidModel unless sigma2 > 0 and mu > sigma2/2.
LogLikelihood log_likelihood(const FptSample& sample, double mu, double sigma2, int n, double S, double y0);

/// Reusable evaluator over a fixed sample (precomputes ln T_i).
class LikelihoodEvaluator {
public:
    LikelihoodEvaluator(std::span<const double> times, int n, double S, double y0);

    LogLikelihood operator()(double mu, double sigma2) const;
    int degree() const noexcept { return n_; }

private:
    std::vector<double> times_;
    std::vector<double> log_times_;
    int n_;
    double S_;
    double y0_;
};

/// Feasible region for the likelihood search: mu in (sigma^2/2 + mu_margin, mu_upper],
/// ln sigma^2 in [log_sigma2_lower, log_sigma2_upper].
struct ParameterBox {
    double mu_margin = 1e-6;
    double mu_upper = 100.0;
    double log_sigma2_lower = -9.210340371976184;  // ln 1e-4
    double log_sigma2_upper = 4.605170185988092;   // ln 1e2

    bool contains(double mu, double log_sigma2) const noexcept;
};

struct MleOptions {
    int n = 34;
    double S = 10.0;
    double y0 = 1.0;
    AnnealingSchedule annealing{};
    NelderMeadOptions polish{};
    bool run_polish = true;
    /// Polish moves longer than this set FitDiagnostics::non_convergence_flag.
    double polish_max_move = 0.5;
    ParameterBox box{};
    /// (mu, sigma^2) to start from; the method-of-moments estimate when unset.
    std::optional<std::pair<double, double>> start;
};

/// Simulated annealing over (mu, ln sigma^2) followed by a Nelder-Mead polish.
/// annealing.temperature0 <= 0 disables both stages and returns the start.
FitResult mle_fit(const FptSample& sample, const MleOptions& options, std::uint64_t seed);

/// Independent chains, one per seed, run concurrently; the highest
/// log-likelihood wins and ties go to the lowest seed.
FitResult mle_fit_multistart(const FptSample& sample, const MleOptions& options, std::span<const std::uint64_t> seeds);

/// Method of moments from the first two cumulants, with d = ln S - ln y0:
/// mu = (d/k1)(1 + k2 d / (2 k1^2)), sigma^2 = k2 d^2 / k1^3.
std::pair<double, double> mm_from_cumulants(double k1, double k2, double S, double y0);

/// mm_from_cumulants applied to the sample's k-statistics. Throws
/// DegenerateSample if N < 2 or k2 <= 0.
FitResult mm_fit(const FptSample& sample, double S, double y0);

}  // namespace lagfpt
