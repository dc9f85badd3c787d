#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagfpt/errors.hpp"
#include "lagfpt/sampling.hpp"

// k-statistics from power sums.
//
// The r-th cumulant is sum over set partitions pi of {1..r} of
// (-1)^{|pi|-1} (|pi|-1)! prod_{blocks} mu'_{|block|}. Each product of raw
// moments mu'_{l1} ... mu'_{lj} has the unbiased U-statistic [l1, ..., lj] / N_(j),
// where [.] is the augmented symmetric function (sum over distinct indices) and
// N_(j) the falling factorial. Augmented symmetric functions follow from power
// sums S_p by
//   [l1, ..., lj] = [l1, ..., l_{j-1}] S_{lj} - sum_{i<j} [l1, ..., li + lj, ..., l_{j-1}].
// k-statistics of order >= 2 are invariant under a common shift, so the power
// sums are taken about the sample mean.

namespace lagfpt {

namespace {

using Parts = std::vector<int>;

// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class AugmentedSums {
public:
    explicit AugmentedSums(std::vector<double> power_sums) : S_(std::move(power_sums)) {}

    double operator()(Parts parts) {
        std::sort(parts.begin(), parts.end());
        if (auto it = memo_.find(parts); it != memo_.end()) return it->second;
        double value;
        if (parts.size() == 1) {
            value = S_[static_cast<std::size_t>(parts[0])];
        } else {
            Parts head(parts.begin(), parts.end() - 1);
            const int last = parts.back();
            value = (*this)(head) * S_[static_cast<std::size_t>(last)];
            for (std::size_t i = 0; i < head.size(); ++i) {
                Parts merged = head;
                merged[i] += last;
                value -= (*this)(merged);
            }
        }
        memo_.emplace(std::move(parts), value);
        return value;
    }

private:
    std::vector<double> S_;  // S_[p] = sum x^p
    std::map<Parts, double> memo_;
};

void integer_partitions(int remaining, int max_part, Parts& current, std::vector<Parts>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        current.push_back(p);
        integer_partitions(remaining - p, p, current, out);
        current.pop_back();
    }
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Number of set partitions of {1..r} whose block sizes form `parts`.
double set_partition_count(const Parts& parts, int r) {
    double denom = 1.0;
    std::map<int, int> multiplicity;
    for (int p : parts) {
        denom *= factorial(p);
        ++multiplicity[p];
    }
    for (const auto& [size, count] : multiplicity) denom *= factorial(count);
    return factorial(r) / denom;
}

}  // namespace

KStatistics k_statistics(std::span<const double> data, int r_max) {
    if (r_max < 1 || r_max > kMaxKStatisticOrder)
        throw std::domain_error("k-statistic order must be in [1, " + std::to_string(kMaxKStatisticOrder) + "]");
    const auto n = data.size();
    if (n < static_cast<std::size_t>(r_max))
        throw DegenerateSample("k-statistics of order " + std::to_string(r_max) + " need at least that many observations");

    CompensatedSum total;
    for (double x : data) total.add(x);
    const double mean = total.value() / static_cast<double>(n);

    std::vector<CompensatedSum> sums(static_cast<std::size_t>(r_max) + 1);
    for (double x : data) {
        const double d = x - mean;
        double power = 1.0;
        for (int p = 1; p <= r_max; ++p) {
            power *= d;
            sums[static_cast<std::size_t>(p)].add(power);
        }
    }
    std::vector<double> S(static_cast<std::size_t>(r_max) + 1, 0.0);
    S[0] = static_cast<double>(n);
    for (int p = 1; p <= r_max; ++p) S[static_cast<std::size_t>(p)] = sums[static_cast<std::size_t>(p)].value();

    AugmentedSums augmented(S);
    KStatistics ks;
    ks.values.assign(static_cast<std::size_t>(r_max) + 1, 0.0);
    ks.values[1] = mean;
    const double N = static_cast<double>(n);
    for (int r = 2; r <= r_max; ++r) {
        std::vector<Parts> partitions;
        Parts current;
        integer_partitions(r, r, current, partitions);
        double k = 0.0;
        for (const auto& parts : partitions) {
            const int blocks = static_cast<int>(parts.size());
            double falling = 1.0;
            for (int i = 0; i < blocks; ++i) falling *= (N - i);
            const double sign = (blocks % 2 == 1) ? 1.0 : -1.0;
            k += sign * factorial(blocks - 1) * set_partition_count(parts, r) * augmented(parts) / falling;
        }
        ks.values[static_cast<std::size_t>(r)] = k;
    }
    return ks;
}

KStatistics k_statistics(const FptSample& sample, int r_max) { return k_statistics(sample.times(), r_max); }

}  // namespace lagfpt
