#pragma once

// Laguerre-Gamma approximation of a density on (0, inf) from its moments:
//
//   g_n(t) = f(t) p_n(t),   p_n(t) = 1 + sum_{k=1}^n B_k L_k^{(alpha)}(beta t),
//
// with f the gamma reference density. p_n is stored in the rearranged power
// basis p_n(t) = sum_k h_{n,k} (-beta t)^k / k!, which supports nested
// evaluation and O(n) extension from degree n to n+1.

#include <span>
#include <string_view>
#include <vector>

#include "lagfpt/gbm.hpp"

namespace lagfpt {

/// f(t) = beta (beta t)^alpha e^{-beta t} / Gamma(alpha+1).
struct GammaReference {
    double alpha = 0.0;
    double beta = 1.0;  // 1/time

    /// Throws std::domain_error unless alpha > -1 and beta > 0.
    void validate() const;
    double mean() const noexcept { return (alpha + 1.0) / beta; }
};

/// Gamma reference density. Zero for t < 0 (and at t = 0 when alpha > 0);
/// throws std::domain_error at t = 0 when alpha < 0, where it diverges.
double gamma_pdf(const GammaReference& ref, double t);
double gamma_log_pdf(const GammaReference& ref, double t);

/// alpha = c1^2/c2 - 1, beta = c1/c2: matches the first two moments of the target.
/// Throws std::domain_error if c1, c2 are not positive or alpha would be <= -1.
GammaReference default_reference(double c1, double c2);

enum class BetaRegime { Strict, Limit, Violated };
std::string_view to_string(BetaRegime r) noexcept;

/// Square integrability of g/f in the f-weighted space holds iff beta <= c1/c2.
/// Equality (within 1e-12 relative) is the Limit regime; Violated still admits
/// an Abel-summable series but carries no convergence guarantee.
BetaRegime check_beta_admissible(const GammaReference& ref, double c1, double c2);

/// B_k = 1 + sum_{j=1}^k C(k, j) (-beta)^j E[T^j] / (alpha+1)_j (rising).
double coeff_B_direct(const GammaReference& ref, const MomentSequence& moments, int k);

/// B_0..B_{k_max} by B_k = sum_{j=1}^k C(k,j) (-1)^{j+1} B_{k-j} + (-beta)^k E[T^k] / (alpha+1)_k.
std::vector<double> coeff_B_recursive(const GammaReference& ref, const MomentSequence& moments, int k_max);

/// One step of the recursion above: B_k from B_0..B_{k-1} and E[T^k].
double next_coefficient(const GammaReference& ref, std::span<const double> previous, double moment_k);

/// h_{n,k} = sum_{j=k}^n B_j C(alpha+j, j-k), for k = 0..n with n = B.size()-1.
std::vector<double> h_from_B(std::span<const double> B, double alpha);

/// h_{n,0} + sum_{i=1}^n (-1)^i h_{n,i} (alpha+1)_i / i!; identically 1 in exact arithmetic.
double normalization_value(std::span<const double> h, double alpha);

/// Truncated expansion of fixed degree. Immutable once built.
class LaguerreExpansion {
public:
    /// Degree 0: p_0 = 1, so g_0 is the reference itself.
    explicit LaguerreExpansion(GammaReference ref);

    /// Builds h and the normalization diagnostic from B_0..B_n. Requires B[0] == 1.
    static LaguerreExpansion from_coefficients(GammaReference ref, std::vector<double> B);

    const GammaReference& reference() const noexcept { return ref_; }
    int degree() const noexcept { return static_cast<int>(B_.size()) - 1; }
    std::span<const double> coefficients() const noexcept { return B_; }
    std::span<const double> h() const noexcept { return h_; }
    double h_hat() const noexcept { return h_hat_; }

private:
    LaguerreExpansion(GammaReference ref, std::vector<double> B, std::vector<double> h);
    friend LaguerreExpansion extend_expansion(const LaguerreExpansion&, double);

    GammaReference ref_;
    std::vector<double> B_;
    std::vector<double> h_;
    double h_hat_ = 1.0;
};

/// Degree-n expansion with B from coeff_B_recursive.
LaguerreExpansion build_expansion(const GammaReference& ref, const MomentSequence& moments, int n);

/// Degree n+1 from degree n: h_{n+1,n+1} = B_{n+1}, h_{n+1,i} = h_{n,i} + B_{n+1} C(alpha+n+1, n+1-i).
LaguerreExpansion extend_expansion(const LaguerreExpansion& exp, double B_next);

/// p_n(t) by the nested scheme d_i = h_{i-1} - (beta t / i) d_{i+1}, d_{n+1} = h_n.
double eval_pn(const LaguerreExpansion& exp, double t);

/// f(t) p_n(t). May be negative. Throws std::domain_error for t <= 0.
double ghat_eval(const LaguerreExpansion& exp, double t);

/// Recomputes the normalization diagnostic from the stored h table.
double normalization_check(const LaguerreExpansion& exp);

/// Closed-form integral of t^m g_n(t); equals E[T^m] for m <= n.
double moment_of_ghat(const LaguerreExpansion& exp, int m);

/// ||p_n - p_{n-1}||_{alpha,beta} = |B_n| sqrt(Gamma(n+alpha+1) / (n! Gamma(alpha+1))),
/// the successive-difference diagnostic. Zero at degree 0.
double successive_difference_norm(const LaguerreExpansion& exp);

enum class StopReason { CriterionTripped, CapReached };
std::string_view to_string(StopReason r) noexcept;

struct AdaptiveOptions {
    double epsilon = 1e-6;
    int n_cap = 64;
};

struct AdaptiveResult {
    LaguerreExpansion expansion;
    StopReason reason = StopReason::CapReached;
    /// |h_hat_k - 1| for k = 0..(degree + 1), or through n_cap when the cap was hit.
    std::vector<double> h_hat_deviation;
};

/// Extends degree by degree and stops at the smallest n with |h_hat_{n+1} - 1| > epsilon,
/// returning degree n; otherwise stops at n_cap. Needs moments through n_cap.
AdaptiveResult build_adaptive(const GammaReference& ref, const MomentSequence& moments,
                              const AdaptiveOptions& options = {});

struct NegativityReport {
    int negative_points = 0;
    int sign_changes = 0;
};

/// Counts grid points where p_n < 0 and sign changes of p_n along the grid.
NegativityReport scan_negativity(const LaguerreExpansion& exp, std::span<const double> grid);

/// Uniform grid. For t_min <= 0 the grid is t_max*i/points, i = 1..points, so
/// it stays on (0, t_max]; otherwise points equally spaced values in [t_min, t_max].
std::vector<double> uniform_grid(double t_min, double t_max, int points);

/// Mean plus ten standard deviations.
double diagnostic_t_max(double mean, double variance);

}  // namespace lagfpt
