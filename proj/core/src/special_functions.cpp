#include "lagfpt/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lagfpt {

PolyCoeffs::PolyCoeffs() : coeffs_{0.0} {}

PolyCoeffs::PolyCoeffs(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double PolyCoeffs::operator()(double t) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

namespace {

void require_alpha(double alpha) {
    if (!(alpha > -1.0))
        throw std::domain_error("Laguerre parameter alpha must exceed -1, got " +
                                std::to_string(alpha));
}

}  // namespace

double laguerre(int k, double alpha, double t) {
    require_alpha(alpha);
    if (k < 0) throw std::domain_error("Laguerre degree must be nonnegative");
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - t;
    for (int i = 1; i < k; ++i) {
        const double next = ((2.0 * i + 1.0 + alpha - t) * cur - (i + alpha) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

PolyCoeffs laguerre_coeffs(int k, double alpha) {
    require_alpha(alpha);
    if (k < 0) throw std::domain_error("Laguerre degree must be nonnegative");
    std::vector<double> c(static_cast<std::size_t>(k) + 1);
    double inv_fact = 1.0;
    for (int i = 0; i <= k; ++i) {
        if (i > 0) inv_fact /= i;
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        c[static_cast<std::size_t>(i)] = falling_binom(alpha, k, i) * sign * inv_fact;
    }
    return PolyCoeffs(std::move(c));
}

double falling_binom(double alpha, int j, int k) {
    if (k < 0 || k > j) throw std::domain_error("falling_binom requires 0 <= k <= j");
    // Interleave numerator and denominator factors to stay in range.
    double r = 1.0;
    for (int i = 1; i <= j - k; ++i) r *= (alpha + k + i) / i;
    return r;
}

double falling_factorial(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (x - i);
    return r;
}

double rising_factorial(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (x + i);
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    // Exact in 128-bit integers while the result fits in 64 bits (n <= 66).
    if (n <= 66) {
        __extension__ using u128 = unsigned __int128;
        u128 r = 1;
        for (int i = 1; i <= k; ++i) r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
        return static_cast<double>(r);
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double double_factorial_2n_minus_3(int n) {
    double r = 1.0;
    for (int f = 2 * n - 3; f > 1; f -= 2) r *= f;
    return r;
}

BellTable::BellTable(std::span<const double> x, int n_max)
    : n_max_(n_max),
      table_(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 1), 0.0) {
    if (n_max < 0) throw std::domain_error("BellTable order must be nonnegative");
    if (x.size() < static_cast<std::size_t>(n_max))
        throw std::length_error("BellTable needs x_1..x_n_max");
    const auto stride = static_cast<std::size_t>(n_max + 1);
    auto at = [&](int n, int j) -> double& {
        return table_[static_cast<std::size_t>(n) * stride + static_cast<std::size_t>(j)];
    };
    at(0, 0) = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        for (int j = 1; j <= n; ++j) {
            double s = 0.0;
            for (int m = 1; m <= n - j + 1; ++m)
                s += binomial(n - 1, m - 1) * x[static_cast<std::size_t>(m - 1)] * at(n - m, j - 1);
            at(n, j) = s;
        }
    }
}

double BellTable::operator()(int n, int j) const {
    if (n == 0 && j == 0) return 1.0;
    if (j < 1 || j > n || n > n_max_)
        throw std::domain_error("partial Bell polynomial requires 1 <= j <= n <= max order");
    return table_[static_cast<std::size_t>(n) * static_cast<std::size_t>(n_max_ + 1) +
                  static_cast<std::size_t>(j)];
}

double bell_partial(int n, int j, std::span<const double> x) {
    if (j < 1 || j > n) throw std::domain_error("partial Bell polynomial requires 1 <= j <= n");
    const auto needed = static_cast<std::size_t>(n - j + 1);
    if (x.size() < needed) throw std::length_error("bell_partial needs x_1..x_{n-j+1}");
    // The recurrence only ever touches x_1..x_{n-j+1}; pad the rest with zeros.
    std::vector<double> padded(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < needed; ++i) padded[i] = x[i];
    return BellTable(padded, n)(n, j);
}

double partition_poly_G(int n, double y, std::span<const double> x) {
    if (n < 1) throw std::domain_error("partition polynomial order must be >= 1");
    if (x.size() < static_cast<std::size_t>(n)) throw std::length_error("partition_poly_G needs x_1..x_n");
    const BellTable bell(x, n);
    double s = 0.0;
    double yj = 1.0;
    for (int j = 1; j <= n; ++j) {
        yj *= y;
        s += yj * bell(n, j);
    }
    return s;
}

}  // namespace lagfpt
