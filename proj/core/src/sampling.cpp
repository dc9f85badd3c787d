#include "lagfpt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "lagfpt/errors.hpp"

namespace lagfpt {

std::string_view to_string(SampleSource s) noexcept {
    switch (s) {
        case SampleSource::Milstein: return "milstein";
        case SampleSource::ExactIg: return "exact-ig";
        case SampleSource::File: return "file";
    }
    return "unknown";
}

FptSample::FptSample(std::vector<double> times, SampleMeta meta)
    : times_(std::move(times)), meta_(std::move(meta)) {
    if (times_.empty()) throw DegenerateSample("FPT sample is empty");
    for (double t : times_)
        if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("FPT observations must be positive and finite");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr double kMissed = -1.0;

double simulate_path(const GbmModel& m, double dt, double t_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(dt));
    const double half_s2 = 0.5 * m.sigma * m.sigma;
    const auto steps = static_cast<std::uint64_t>(std::ceil(t_max / dt));
    double y = m.y0;
    for (std::uint64_t k = 0; k < steps; ++k) {
        const double dw = normal(rng);
        const double next = y + m.mu * y * dt + m.sigma * y * dw + half_s2 * y * (dw * dw - dt);
        if (next >= m.S) return (static_cast<double>(k) + (m.S - y) / (next - y)) * dt;
        y = next;
    }
    return kMissed;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(master ^ (stream * 0x9E3779B97F4A7C15ULL)));
}

FptSample simulate_gbm_fpt(const GbmModel& model, const SimulationOptions& options) {
    model.validate();
    if (options.paths == 0) throw std::domain_error("need at least one path");
    if (!(options.dt > 0.0)) throw std::domain_error("dt must be positive");
    const IgParams ig = ig_from_gbm(model);
    const double t_max = options.t_max.value_or(ig.b + 20.0 * std::sqrt(ig.variance()));
    if (!(t_max > options.dt)) throw std::domain_error("t_max must exceed dt");

    std::vector<double> crossing(options.paths, kMissed);
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, options.paths));
    // Path i always uses stream i, so the split across workers does not matter.
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            crossing[i] = simulate_path(model, options.dt, t_max, stream_seed(options.seed, i));
    };
    if (threads <= 1) {
        work(0, options.paths);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (options.paths + threads - 1) / threads;
        for (std::size_t begin = 0; begin < options.paths; begin += chunk)
            pool.emplace_back(work, begin, std::min(options.paths, begin + chunk));
    }

    std::vector<double> times;
    times.reserve(options.paths);
    for (double t : crossing)
        if (t != kMissed) times.push_back(t);
    const std::size_t censored = options.paths - times.size();
    if (static_cast<double>(censored) > options.max_censored_fraction * static_cast<double>(options.paths))
        throw CensoringExceeded(censored, options.paths);

    SampleMeta meta;
    meta.source = SampleSource::Milstein;
    meta.seed = options.seed;
    meta.dt = options.dt;
    meta.t_max = t_max;
    meta.censored = censored;
    return FptSample(std::move(times), std::move(meta));
}

FptSample sample_ig_exact(const IgParams& p, std::size_t n, std::uint64_t seed) {
    p.validate();
    if (n == 0) throw std::domain_error("need at least one draw");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> times(n);
    const double b = p.b;
    const double a = p.a;
    for (auto& t : times) {
        const double z = normal(rng);
        const double y = z * z;
        // Smaller root of a (x - b)^2 = y b^2 x. The roots multiply to b^2, so take
        // b^2 over the larger one rather than subtracting.
        const double larger = b + b * b * y / (2.0 * a) + b / (2.0 * a) * std::sqrt(4.0 * a * b * y + b * b * y * y);
        const double x = b * b / larger;
        t = (uniform(rng) <= b / (b + x)) ? x : b * b / x;
    }
    SampleMeta meta;
    meta.source = SampleSource::ExactIg;
    meta.seed = seed;
    return FptSample(std::move(times), std::move(meta));
}

SampleApproximation approximate_from_sample(const FptSample& sample, const SampleApproxOptions& options) {
    const int r_max = options.r_max;
    KStatistics ks = k_statistics(sample, r_max);
    if (r_max < 2) throw std::domain_error("sample approximation needs r_max >= 2");
    if (!(ks[2] > 0.0)) throw DegenerateSample("second k-statistic is not positive");

    const int n_moments = std::max(options.adaptive.n_cap, 1);
    CumulantSequence c;
    c.values.assign(static_cast<std::size_t>(n_moments) + 1, 0.0);
    for (int r = 1; r <= std::min(r_max, n_moments); ++r) c.values[static_cast<std::size_t>(r)] = ks[r];
    const MomentSequence moments = moments_from_cumulants(c, n_moments);

    const GammaReference ref = default_reference(ks[1], ks[2]);
    AdaptiveResult adaptive = build_adaptive(ref, moments, options.adaptive);
    // The degree search consumes moments up to degree + 1 (capped at n_cap).
    const int highest_used = std::min(adaptive.expansion.degree() + 1, options.adaptive.n_cap);
    return SampleApproximation{std::move(adaptive), std::move(ks), ref, highest_used > r_max};
}

}  // namespace lagfpt
