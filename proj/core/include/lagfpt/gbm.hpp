#pragma once

// Geometric Brownian motion, the inverse-Gaussian law of its first passage
// through a constant upper threshold, and the moment/cumulant pipelines.

#include <span>
#include <vector>

namespace lagfpt {

/// Highest moment/cumulant order any sequence in this library is built to.
inline constexpr int kMaxMomentOrder = 64;

/// dY = mu Y dt + sigma Y dW started at y0 < S. The first passage through S is
/// almost surely finite only when mu > sigma^2 / 2.
struct GbmModel {
    double mu = 0.0;     // drift, 1/time
    double sigma = 0.0;  // volatility, 1/sqrt(time)
    double y0 = 0.0;     // start level
    double S = 0.0;      // threshold level

    /// Throws InvalidModel unless sigma > 0, 0 < y0 < S and mu > sigma^2/2.
    void validate() const;

    /// ln S - ln y0.
    double log_distance() const;
};

/// IG(a, b): a is the shape, b the mean.
struct IgParams {
    double a = 0.0;
    double b = 0.0;

    /// Throws InvalidModel unless a > 0 and b > 0.
    void validate() const;
    double mean() const noexcept { return b; }
    double variance() const noexcept { return b * b * b / a; }
    /// Location of the density maximum.
    double mode() const noexcept;
};

/// values[m] = E[T^m]; values[0] = 1.
struct MomentSequence {
    std::vector<double> values;

    int max_order() const noexcept { return static_cast<int>(values.size()) - 1; }
    double operator[](int m) const { return values.at(static_cast<std::size_t>(m)); }
};

/// values[k] = c_k for k >= 1; values[0] = 0 (the log-MGF vanishes at zero).
struct CumulantSequence {
    std::vector<double> values;

    int max_order() const noexcept { return static_cast<int>(values.size()) - 1; }
    double operator[](int k) const { return values.at(static_cast<std::size_t>(k)); }
};

/// a = (ln S - ln y0)^2 / sigma^2, b = (ln S - ln y0) / (mu - sigma^2/2).
IgParams ig_from_gbm(const GbmModel& model);

/// Inverse-Gaussian density; 0 for t <= 0.
double ig_pdf(const IgParams& p, double t);

/// c_n = (2n-3)!! b^{2n-1} / a^{n-1}, via c_n = ((2n-3) b^2 / a) c_{n-1}, c_1 = b.
CumulantSequence ig_cumulants(const IgParams& p, int n_max);

/// E[T^{n+1}] = ((2n-1) b^2 / a) E[T^n] + b^2 E[T^{n-1}], E[T^0] = 1, E[T] = b.
MomentSequence ig_moments_recursive(const IgParams& p, int n_max);

/// Bessel-free finite sum b^n sum_{k<n} (n-1+k)! / (k! (n-1-k)!) (b / 2a)^k.
double ig_moments_finite_sum(const IgParams& p, int n);

/// (-2b^2/a)^n G_n(-a/b; (1/2)_1, (1/2)_2, ...), with (1/2)_k the falling factorial.
double ig_moments_bell(const IgParams& p, int n);

/// E[T^{n+1}] = c_{n+1} + sum_{k=1}^n C(n, k-1) c_k E[T^{n+1-k}].
/// Throws std::length_error if c does not reach order n_max.
MomentSequence moments_from_cumulants(const CumulantSequence& c, int n_max);

/// Inverse of moments_from_cumulants: c_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) c_k m_{n-k}.
CumulantSequence cumulants_from_moments(const MomentSequence& m, int n_max);

}  // namespace lagfpt
