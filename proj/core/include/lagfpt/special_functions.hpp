#pragma once

// Combinatorial and special-function kernels used by the moment pipelines and
// the Laguerre-Gamma expansion. Everything here is a pure function of its
// arguments and safe to call concurrently.

#include <span>
#include <vector>

namespace lagfpt {

/// Coefficients of a polynomial in t; index i holds the coefficient of t^i.
/// Trailing zeros are trimmed, so the stored leading coefficient is nonzero
/// unless the polynomial is identically zero (stored as a single 0).
class PolyCoeffs {
public:
    PolyCoeffs();
    explicit PolyCoeffs(std::vector<double> coeffs);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t i) const { return coeffs_.at(i); }

    /// Horner evaluation.
    double operator()(double t) const noexcept;

private:
    std::vector<double> coeffs_;
};

/// Generalized Laguerre polynomial L_k^{(alpha)}(t), by the three-term recurrence.
/// Throws std::domain_error if alpha <= -1.
double laguerre(int k, double alpha, double t);

/// Power-basis coefficients of L_k^{(alpha)}: sum_i C(k+alpha, k-i) (-t)^i / i!.
PolyCoeffs laguerre_coeffs(int k, double alpha);

/// C(alpha + j, j - k) as the running product (alpha+j)(alpha+j-1)...(alpha+k+1)/(j-k)!.
/// Requires 0 <= k <= j.
double falling_binom(double alpha, int j, int k);

/// Falling factorial x (x-1) ... (x-k+1); equals 1 for k = 0.
double falling_factorial(double x, int k);

/// Rising factorial x (x+1) ... (x+k-1) = Gamma(x+k)/Gamma(x); equals 1 for k = 0.
double rising_factorial(double x, int k);

/// Ordinary binomial coefficient C(n, k) in double precision.
double binomial(int n, int k);

/// (2n-3)!! with the convention (-1)!! = 1, so n = 1 gives 1.
double double_factorial_2n_minus_3(int n);

/// Table of partial exponential Bell polynomials B_{n,j}(x_1, ..., x_{n-j+1})
/// for all 0 <= j <= n <= n_max, built once by the recurrence
///   B_{n,j} = sum_{m=1}^{n-j+1} C(n-1, m-1) x_m B_{n-m, j-1}.
class BellTable {
public:
    /// x[m-1] holds x_m. Requires x.size() >= n_max.
    BellTable(std::span<const double> x, int n_max);

    int max_order() const noexcept { return n_max_; }

    /// B_{n,j}. Throws std::domain_error unless 1 <= j <= n <= max_order(),
    /// except B_{0,0} = 1 which is also accessible.
    double operator()(int n, int j) const;

private:
    int n_max_;
    std::vector<double> table_;  // (n_max+1) x (n_max+1), row n, column j
};

/// B_{n,j}(x_1, ..., x_{n-j+1}). x must hold at least n-j+1 entries.
/// Throws std::domain_error unless 1 <= j <= n.
double bell_partial(int n, int j, std::span<const double> x);

/// Partition polynomial G_n(y; x) = sum_{j=1}^n y^j B_{n,j}(x_1, ..., x_{n-j+1}).
/// Requires n >= 1 and x.size() >= n.
double partition_poly_G(int n, double y, std::span<const double> x);

}  // namespace lagfpt
