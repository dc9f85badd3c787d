#include "lagfpt/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "lagfpt/errors.hpp"
#include "lagfpt/expansion.hpp"
#include "lagfpt/gbm.hpp"

namespace lagfpt {

std::string_view to_string(FitMethod m) noexcept {
    switch (m) {
        case FitMethod::Mle: return "mle";
        case FitMethod::Mm: return "mm";
    }
    return "unknown";
}

namespace {

GbmModel candidate_model(double mu, double sigma2, double S, double y0) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2) || !std::isfinite(mu))
        throw InvalidModel("candidate needs finite mu and sigma^2 > 0");
    GbmModel m{mu, std::sqrt(sigma2), y0, S};
    m.validate();
    return m;
}

LaguerreExpansion candidate_expansion(const GbmModel& model, int n) {
    const IgParams ig = ig_from_gbm(model);
    const GammaReference ref = default_reference(ig.b, ig.variance());
    return build_expansion(ref, ig_moments_recursive(ig, std::max(n, 1)), n);
}

}  // namespace

LikelihoodEvaluator::LikelihoodEvaluator(std::span<const double> times, int n, double S, double y0)
    : times_(times.begin(), times.end()), n_(n), S_(S), y0_(y0) {
    if (n < 0 || n > kMaxMomentOrder) throw std::domain_error("expansion degree out of range");
    if (times_.empty()) throw DegenerateSample("likelihood needs at least one observation");
    log_times_.reserve(times_.size());
    for (double t : times_) log_times_.push_back(std::log(t));
}

LogLikelihood LikelihoodEvaluator::operator()(double mu, double sigma2) const {
    const auto expansion = candidate_expansion(candidate_model(mu, sigma2, S_, y0_), n_);
    const auto& ref = expansion.reference();
    const double log_norm = std::log(ref.beta) * (ref.alpha + 1.0) - std::lgamma(ref.alpha + 1.0);
    const double log_floor = std::log(kDensityFloor);

    LogLikelihood out;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double p = eval_pn(expansion, times_[i]);
        const double log_f = log_norm + ref.alpha * log_times_[i] - ref.beta * times_[i];
        const double density = p * std::exp(log_f);
        if (density > 0.0 && std::isfinite(log_f)) {
            out.value += log_f + std::log(p);
        } else {
            out.value += log_floor;
            ++out.nonpositive_points;
        }
    }
    return out;
}

LogLikelihood log_likelihood(const FptSample& sample, double mu, double sigma2, int n, double S, double y0) {
    return LikelihoodEvaluator(sample.times(), n, S, y0)(mu, sigma2);
}

bool ParameterBox::contains(double mu, double log_sigma2) const noexcept {
    if (!(log_sigma2 >= log_sigma2_lower && log_sigma2 <= log_sigma2_upper)) return false;
    const double sigma2 = std::exp(log_sigma2);
    return mu > 0.5 * sigma2 + mu_margin && mu <= mu_upper;
}

std::pair<double, double> mm_from_cumulants(double k1, double k2, double S, double y0) {
    if (!(k1 > 0.0)) throw DegenerateSample("first cumulant must be positive");
    if (!(k2 > 0.0)) throw DegenerateSample("second cumulant must be positive");
    if (!(y0 > 0.0 && y0 < S)) throw InvalidModel("need 0 < y0 < S");
    const double d = std::log(S) - std::log(y0);
    const double mu = d / k1 * (1.0 + 0.5 * k2 / (k1 * k1) * d);
    const double sigma2 = k2 / (k1 * k1 * k1) * d * d;
    return {mu, sigma2};
}

FitResult mm_fit(const FptSample& sample, double S, double y0) {
    if (sample.size() < 2) throw DegenerateSample("method of moments needs at least two observations");
    const auto ks = k_statistics(sample, 2);
    const auto [mu, sigma2] = mm_from_cumulants(ks[1], ks[2], S, y0);
    FitResult r;
    r.mu_hat = mu;
    r.sigma2_hat = sigma2;
    r.method = FitMethod::Mm;
    return r;
}

FitResult mle_fit(const FptSample& sample, const MleOptions& options, std::uint64_t seed) {
    const LikelihoodEvaluator evaluator(sample.times(), options.n, options.S, options.y0);
    const std::pair<double, double> start =
        options.start ? *options.start : [&] {
            const auto mm = mm_fit(sample, options.S, options.y0);
            return std::pair{mm.mu_hat, mm.sigma2_hat};
        }();
    candidate_model(start.first, start.second, options.S, options.y0);

    // Search space x = (mu, ln sigma^2).
    const Objective objective = [&](std::span<const double> x) -> double {
        if (!options.box.contains(x[0], x[1])) return -INFINITY;
        return evaluator(x[0], std::exp(x[1])).value;
    };
    const std::vector<double> x0{start.first, std::log(start.second)};

    FitResult r;
    r.method = FitMethod::Mle;
    r.n_used = options.n;
    r.seed = seed;
    r.diagnostics.start_loglik = evaluator(start.first, start.second).value;

    OptimumPoint best{x0, r.diagnostics.start_loglik};
    if (options.annealing.temperature0 > 0.0) {
        const auto annealed = simulated_annealing(objective, x0, options.annealing, seed);
        r.diagnostics.annealing = annealed.trace;
        if (annealed.best.value > best.value) best = annealed.best;
        r.diagnostics.annealing_loglik = best.value;

        if (options.run_polish) {
            const auto polished = nelder_mead(objective, best.x, options.polish);
            r.diagnostics.polish_evaluations = polished.evaluations;
            r.diagnostics.polish_converged = polished.converged;
            r.diagnostics.polish_distance = std::hypot(polished.best.x[0] - best.x[0], polished.best.x[1] - best.x[1]);
            r.diagnostics.non_convergence_flag = r.diagnostics.polish_distance > options.polish_max_move;
            if (polished.best.value >= best.value) best = polished.best;
        }
    } else {
        r.diagnostics.annealing_loglik = best.value;
    }

    r.mu_hat = best.x[0];
    r.sigma2_hat = std::exp(best.x[1]);
    const auto final_ll = evaluator(r.mu_hat, r.sigma2_hat);
    r.loglik = final_ll.value;
    r.diagnostics.nonpositive_points = final_ll.nonpositive_points;
    const auto expansion = candidate_expansion(candidate_model(r.mu_hat, r.sigma2_hat, options.S, options.y0), options.n);
    r.diagnostics.h_hat_deviation = std::abs(expansion.h_hat() - 1.0);
    return r;
}

FitResult mle_fit_multistart(const FptSample& sample, const MleOptions& options, std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    std::vector<std::future<FitResult>> runs;
    runs.reserve(seeds.size());
    for (auto seed : seeds)
        runs.push_back(std::async(std::launch::async, [&sample, &options, seed] { return mle_fit(sample, options, seed); }));
    std::vector<FitResult> results;
    results.reserve(runs.size());
    for (auto& f : runs) results.push_back(f.get());
    const auto best = std::max_element(results.begin(), results.end(), [](const FitResult& a, const FitResult& b) {
        if (*a.loglik != *b.loglik) return *a.loglik < *b.loglik;
        return *a.seed > *b.seed;  // lower seed ranks higher on ties
    });
    return *best;
}

}  // namespace lagfpt
