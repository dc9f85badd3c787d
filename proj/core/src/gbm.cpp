#include "lagfpt/gbm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lagfpt/errors.hpp"
#include "lagfpt/special_functions.hpp"

namespace lagfpt {

namespace {

void require_order(int n_max, int lowest) {
    if (n_max < lowest) throw std::domain_error("moment order must be >= " + std::to_string(lowest));
    if (n_max > kMaxMomentOrder)
        throw std::length_error("moment order " + std::to_string(n_max) + " exceeds cap " +
                                std::to_string(kMaxMomentOrder));
}

}  // namespace

void GbmModel::validate() const {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(y0) || !std::isfinite(S))
        throw InvalidModel("GBM parameters must be finite");
    if (!(sigma > 0.0)) throw InvalidModel("sigma must be positive");
    if (!(y0 > 0.0 && y0 < S)) throw InvalidModel("need 0 < y0 < S");
    if (!(mu > 0.5 * sigma * sigma))
        throw InvalidModel("need mu > sigma^2/2 for an almost surely finite passage time");
}

double GbmModel::log_distance() const { return std::log(S) - std::log(y0); }

void IgParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidModel("inverse-Gaussian parameters must be positive and finite");
}

double IgParams::mode() const noexcept {
    const double r = 1.5 * b / a;
    return b * (std::sqrt(1.0 + r * r) - r);
}

IgParams ig_from_gbm(const GbmModel& model) {
    model.validate();
    const double d = model.log_distance();
    IgParams p{d * d / (model.sigma * model.sigma),
               d / (model.mu - 0.5 * model.sigma * model.sigma)};
    p.validate();
    return p;
}

double ig_pdf(const IgParams& p, double t) {
    if (!(t > 0.0)) return 0.0;
    const double dev = t - p.b;
    return std::sqrt(p.a / (2.0 * std::numbers::pi * t * t * t)) *
           std::exp(-p.a * dev * dev / (2.0 * p.b * p.b * t));
}

CumulantSequence ig_cumulants(const IgParams& p, int n_max) {
    require_order(n_max, 1);
    CumulantSequence c;
    c.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    c.values[1] = p.b;
    const double ratio = p.b * p.b / p.a;
    for (int n = 2; n <= n_max; ++n)
        c.values[static_cast<std::size_t>(n)] = (2.0 * n - 3.0) * ratio * c.values[static_cast<std::size_t>(n - 1)];
    return c;
}

MomentSequence ig_moments_recursive(const IgParams& p, int n_max) {
    require_order(n_max, 1);
    MomentSequence m;
    m.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    m.values[0] = 1.0;
    m.values[1] = p.b;
    const double b2 = p.b * p.b;
    for (int n = 1; n < n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        m.values[i + 1] = (2.0 * n - 1.0) * b2 / p.a * m.values[i] + b2 * m.values[i - 1];
    }
    return m;
}

double ig_moments_finite_sum(const IgParams& p, int n) {
    require_order(n, 1);
    const double x = p.b / (2.0 * p.a);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k + 1 <= n - 1; ++k) {
        term *= static_cast<double>(n + k) * static_cast<double>(n - 1 - k) / (k + 1.0) * x;
        sum += term;
    }
    return std::pow(p.b, n) * sum;
}

double ig_moments_bell(const IgParams& p, int n) {
    require_order(n, 1);
    std::vector<double> half_falling(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) half_falling[static_cast<std::size_t>(k - 1)] = falling_factorial(0.5, k);
    const double g = partition_poly_G(n, -p.a / p.b, half_falling);
    return std::pow(-2.0 * p.b * p.b / p.a, n) * g;
}

MomentSequence moments_from_cumulants(const CumulantSequence& c, int n_max) {
    require_order(n_max, 1);
    if (c.max_order() < n_max)
        throw std::length_error("need cumulants through order " + std::to_string(n_max));
    MomentSequence m;
    m.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    m.values[0] = 1.0;
    for (int n = 0; n < n_max; ++n) {
        double s = c[n + 1];
        for (int k = 1; k <= n; ++k)
            s += binomial(n, k - 1) * c[k] * m.values[static_cast<std::size_t>(n + 1 - k)];
        m.values[static_cast<std::size_t>(n + 1)] = s;
    }
    return m;
}

CumulantSequence cumulants_from_moments(const MomentSequence& m, int n_max) {
    require_order(n_max, 1);
    if (m.max_order() < n_max)
        throw std::length_error("need moments through order " + std::to_string(n_max));
    CumulantSequence c;
    c.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        double s = m[n];
        for (int k = 1; k < n; ++k) s -= binomial(n - 1, k - 1) * c.values[static_cast<std::size_t>(k)] * m[n - k];
        c.values[static_cast<std::size_t>(n)] = s;
    }
    return c;
}

}  // namespace lagfpt
