#include "lagfpt/expansion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "lagfpt/special_functions.hpp"

namespace lagfpt {

void GammaReference::validate() const {
    if (!(alpha > -1.0) || !std::isfinite(alpha))
        throw std::domain_error("gamma reference needs alpha > -1, got " + std::to_string(alpha));
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::domain_error("gamma reference needs beta > 0, got " + std::to_string(beta));
}

double gamma_log_pdf(const GammaReference& ref, double t) {
    if (t < 0.0) return -INFINITY;
    if (t == 0.0) {
        if (ref.alpha < 0.0) throw std::domain_error("gamma density diverges at t = 0 for alpha < 0");
        return ref.alpha == 0.0 ? std::log(ref.beta) : -INFINITY;
    }
    return std::log(ref.beta) + ref.alpha * std::log(ref.beta * t) - ref.beta * t - std::lgamma(ref.alpha + 1.0);
}

double gamma_pdf(const GammaReference& ref, double t) { return std::exp(gamma_log_pdf(ref, t)); }

GammaReference default_reference(double c1, double c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw std::domain_error("default reference needs positive mean and variance");
    GammaReference ref{c1 * c1 / c2 - 1.0, c1 / c2};
    ref.validate();
    return ref;
}

std::string_view to_string(BetaRegime r) noexcept {
    switch (r) {
        case BetaRegime::Strict: return "strict";
        case BetaRegime::Limit: return "limit";
        case BetaRegime::Violated: return "violated";
    }
    return "unknown";
}

BetaRegime check_beta_admissible(const GammaReference& ref, double c1, double c2) {
    const double bound = c1 / c2;
    if (std::abs(ref.beta - bound) <= 1e-12 * std::abs(bound)) return BetaRegime::Limit;
    return ref.beta < bound ? BetaRegime::Strict : BetaRegime::Violated;
}

namespace {

void require_moments(const MomentSequence& moments, int k) {
    if (moments.max_order() < k)
        throw std::length_error("need moments through order " + std::to_string(k));
}

// (-beta)^k E[T^k] / (alpha+1)_k with the scale accumulated as a running product.
double scaled_moment(const GammaReference& ref, double moment_k, int k) {
    double scale = 1.0;
    for (int i = 1; i <= k; ++i) scale *= -ref.beta / (ref.alpha + i);
    return scale * moment_k;
}

}  // namespace

double coeff_B_direct(const GammaReference& ref, const MomentSequence& moments, int k) {
    require_moments(moments, k);
    double s = 1.0;
    double scale = 1.0;
    for (int j = 1; j <= k; ++j) {
        scale *= -ref.beta / (ref.alpha + j);
        s += binomial(k, j) * scale * moments[j];
    }
    return s;
}

double next_coefficient(const GammaReference& ref, std::span<const double> previous, double moment_k) {
    const int k = static_cast<int>(previous.size());
    if (k < 1) throw std::domain_error("next_coefficient needs B_0");
    double s = 0.0;
    for (int j = 1; j <= k; ++j) {
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        s += binomial(k, j) * sign * previous[static_cast<std::size_t>(k - j)];
    }
    return s + scaled_moment(ref, moment_k, k);
}

std::vector<double> coeff_B_recursive(const GammaReference& ref, const MomentSequence& moments, int k_max) {
    require_moments(moments, k_max);
    std::vector<double> B{1.0};
    B.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 1; k <= k_max; ++k) B.push_back(next_coefficient(ref, B, moments[k]));
    return B;
}

std::vector<double> h_from_B(std::span<const double> B, double alpha) {
    if (B.empty() || B[0] != 1.0) throw std::domain_error("h_from_B requires B[0] == 1");
    const int n = static_cast<int>(B.size()) - 1;
    std::vector<double> h(B.size(), 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int j = k; j <= n; ++j) s += B[static_cast<std::size_t>(j)] * falling_binom(alpha, j, k);
        h[static_cast<std::size_t>(k)] = s;
    }
    return h;
}

double normalization_value(std::span<const double> h, double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        s += sign * h[i] * falling_binom(alpha, static_cast<int>(i), 0);
    }
    return s;
}

LaguerreExpansion::LaguerreExpansion(GammaReference ref) : ref_(ref), B_{1.0}, h_{1.0}, h_hat_(1.0) {
    ref_.validate();
}

LaguerreExpansion::LaguerreExpansion(GammaReference ref, std::vector<double> B, std::vector<double> h)
    : ref_(ref), B_(std::move(B)), h_(std::move(h)) {
    h_hat_ = normalization_value(h_, ref_.alpha);
}

LaguerreExpansion LaguerreExpansion::from_coefficients(GammaReference ref, std::vector<double> B) {
    ref.validate();
    auto h = h_from_B(B, ref.alpha);
    return LaguerreExpansion(ref, std::move(B), std::move(h));
}

LaguerreExpansion build_expansion(const GammaReference& ref, const MomentSequence& moments, int n) {
    return LaguerreExpansion::from_coefficients(ref, coeff_B_recursive(ref, moments, n));
}

LaguerreExpansion extend_expansion(const LaguerreExpansion& exp, double B_next) {
    const int n1 = exp.degree() + 1;
    const double alpha = exp.ref_.alpha;
    std::vector<double> B(exp.B_);
    B.push_back(B_next);
    std::vector<double> h(exp.h_);
    for (int i = 0; i < n1; ++i) h[static_cast<std::size_t>(i)] += B_next * falling_binom(alpha, n1, i);
    h.push_back(B_next);
    return LaguerreExpansion(exp.ref_, std::move(B), std::move(h));
}

double eval_pn(const LaguerreExpansion& exp, double t) {
    const auto h = exp.h();
    const int n = exp.degree();
    const double bt = exp.reference().beta * t;
    double d = h[static_cast<std::size_t>(n)];
    for (int i = n; i >= 1; --i) d = h[static_cast<std::size_t>(i - 1)] - (bt / i) * d;
    return d;
}

double ghat_eval(const LaguerreExpansion& exp, double t) {
    if (!(t > 0.0)) throw std::domain_error("approximate density is evaluated on t > 0");
    return gamma_pdf(exp.reference(), t) * eval_pn(exp, t);
}

double normalization_check(const LaguerreExpansion& exp) {
    return normalization_value(exp.h(), exp.reference().alpha);
}

double moment_of_ghat(const LaguerreExpansion& exp, int m) {
    if (m < 0) throw std::domain_error("moment order must be nonnegative");
    const auto& ref = exp.reference();
    // beta^{-m} (alpha+1)_m sum_k (-1)^k h_k C(alpha+m+k, k)
    double s = 0.0;
    const auto h = exp.h();
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s += sign * h[k] * falling_binom(ref.alpha + m, static_cast<int>(k), 0);
    }
    double prefactor = 1.0;
    for (int i = 1; i <= m; ++i) prefactor *= (ref.alpha + i) / ref.beta;
    return prefactor * s;
}

double successive_difference_norm(const LaguerreExpansion& exp) {
    const int n = exp.degree();
    if (n == 0) return 0.0;
    return std::abs(exp.coefficients().back()) * std::sqrt(falling_binom(exp.reference().alpha, n, 0));
}

std::string_view to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::CriterionTripped: return "criterion";
        case StopReason::CapReached: return "cap";
    }
    return "unknown";
}

AdaptiveResult build_adaptive(const GammaReference& ref, const MomentSequence& moments,
                              const AdaptiveOptions& options) {
    if (!(options.epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    if (options.n_cap < 0) throw std::domain_error("n_cap must be nonnegative");
    require_moments(moments, options.n_cap);

    AdaptiveResult result{LaguerreExpansion(ref), StopReason::CapReached, {0.0}};
    result.h_hat_deviation.front() = std::abs(result.expansion.h_hat() - 1.0);
    while (result.expansion.degree() < options.n_cap) {
        const int k = result.expansion.degree() + 1;
        const double B_next = next_coefficient(ref, result.expansion.coefficients(), moments[k]);
        auto candidate = extend_expansion(result.expansion, B_next);
        const double deviation = std::abs(candidate.h_hat() - 1.0);
        result.h_hat_deviation.push_back(deviation);
        // NaN deviations also stop the search.
        if (!(deviation <= options.epsilon)) {
            result.reason = StopReason::CriterionTripped;
            return result;
        }
        result.expansion = std::move(candidate);
    }
    return result;
}

NegativityReport scan_negativity(const LaguerreExpansion& exp, std::span<const double> grid) {
    NegativityReport report;
    int previous_sign = 0;
    for (double t : grid) {
        const double p = eval_pn(exp, t);
        const int sign = p < 0.0 ? -1 : (p > 0.0 ? 1 : 0);
        if (sign < 0) ++report.negative_points;
        if (sign != 0) {
            if (previous_sign != 0 && sign != previous_sign) ++report.sign_changes;
            previous_sign = sign;
        }
    }
    return report;
}

std::vector<double> uniform_grid(double t_min, double t_max, int points) {
    if (points < 1) throw std::domain_error("grid needs at least one point");
    if (!(t_max > t_min) || !(t_max > 0.0)) throw std::domain_error("grid needs t_max > max(t_min, 0)");
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (t_min <= 0.0) {
        for (int i = 1; i <= points; ++i) grid[static_cast<std::size_t>(i - 1)] = t_max * i / points;
    } else if (points == 1) {
        grid[0] = t_min;
    } else {
        for (int i = 0; i < points; ++i)
            grid[static_cast<std::size_t>(i)] = t_min + (t_max - t_min) * i / (points - 1);
    }
    return grid;
}

double diagnostic_t_max(double mean, double variance) { return mean + 10.0 * std::sqrt(variance); }

}  // namespace lagfpt
