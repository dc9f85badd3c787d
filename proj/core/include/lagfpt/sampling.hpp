#pragma once

// First-passage-time data: Milstein trajectory simulation, exact inverse-Gaussian
// draws, k-statistics, and the sample-driven Laguerre approximation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lagfpt/expansion.hpp"
#include "lagfpt/gbm.hpp"

namespace lagfpt {

enum class SampleSource { Milstein, ExactIg, File };
std::string_view to_string(SampleSource s) noexcept;

struct SampleMeta {
    SampleSource source = SampleSource::File;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> t_max;
    std::size_t censored = 0;
    /// Header lines carried through from a sample file, without the leading '#'.
    std::vector<std::string> header;
};

/// Positive FPT observations, at least one.
class FptSample {
public:
    /// Throws DegenerateSample if empty, std::domain_error on a non-positive or non-finite time.
    explicit FptSample(std::vector<double> times, SampleMeta meta = {});

    std::span<const double> times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    const SampleMeta& meta() const noexcept { return meta_; }

private:
    std::vector<double> times_;
    SampleMeta meta_;
};

/// Seed of the per-path stream `stream` derived from `master`: two rounds of
/// splitmix64 over master ^ (stream * 0x9E3779B97F4A7C15).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) noexcept;

struct SimulationOptions {
    std::size_t paths = 10'000;
    double dt = 1e-3;
    /// Defaults to b + 20 sqrt(b^3/a) for the model's IG law.
    std::optional<double> t_max;
    std::uint64_t seed = 1;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). The sample
    /// does not depend on this value.
    unsigned threads = 0;
    /// Largest tolerated fraction of paths that never cross.
    double max_censored_fraction = 0.01;
};

/// Milstein paths Y_{k+1} = Y_k + mu Y_k dt + sigma Y_k dW + sigma^2 Y_k (dW^2 - dt) / 2,
/// with the crossing time linearly interpolated between the bracketing grid points.
/// Non-crossing paths are dropped and counted; throws CensoringExceeded above the limit.
FptSample simulate_gbm_fpt(const GbmModel& model, const SimulationOptions& options);

/// i.i.d. IG(a, b) draws by the transformation-with-acceptance method.
FptSample sample_ig_exact(const IgParams& p, std::size_t n, std::uint64_t seed);

/// values[r] = k_r for r = 1..max_order(); values[0] = 0.
struct KStatistics {
    std::vector<double> values;

    int max_order() const noexcept { return static_cast<int>(values.size()) - 1; }
    double operator[](int r) const { return values.at(static_cast<std::size_t>(r)); }
};

inline constexpr int kMaxKStatisticOrder = 10;

/// Unbiased cumulant estimators k_1..k_{r_max}. Throws std::domain_error if
/// r_max is outside [1, 10] and DegenerateSample if the sample is smaller than r_max.
KStatistics k_statistics(std::span<const double> data, int r_max);
KStatistics k_statistics(const FptSample& sample, int r_max);

/// The degree cap defaults to r_max so no cumulant is extrapolated; raising
/// n_cap above r_max zero-fills the missing cumulants.
struct SampleApproxOptions {
    int r_max = kMaxKStatisticOrder;
    AdaptiveOptions adaptive{1e-6, kMaxKStatisticOrder};
};

struct SampleApproximation {
    AdaptiveResult adaptive;
    KStatistics kstats;
    GammaReference reference;
    /// Moments above order r_max were built with cumulants beyond r_max set to zero.
    bool cumulants_extrapolated = false;
};

/// k-statistics -> moments (cumulant recursion, zero beyond r_max) ->
/// default reference from k_1, k_2 -> adaptive degree search.
SampleApproximation approximate_from_sample(const FptSample& sample, const SampleApproxOptions& options = {});

/// Reads one positive decimal per line; blank lines and lines starting with '#'
/// are skipped (the latter kept in meta().header). Throws SampleIoError.
FptSample read_sample(std::istream& in);
FptSample read_sample_file(const std::string& path);

/// Writes '#'-prefixed header lines, then one time per line at round-trip precision.
void write_sample(std::ostream& out, const FptSample& sample, std::span<const std::string> header = {});

}  // namespace lagfpt
