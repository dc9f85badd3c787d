#include "lagfpt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lagfpt {

namespace {

double safe_eval(const Objective& f, std::span<const double> x) {
    const double v = f(x);
    return std::isnan(v) ? -INFINITY : v;
}

}  // namespace

AnnealingOutcome simulated_annealing(const Objective& objective, std::span<const double> start,
                                     const AnnealingSchedule& schedule, std::uint64_t seed) {
    const std::size_t dim = start.size();
    if (schedule.proposal_sd.size() != dim) throw std::invalid_argument("proposal_sd must match the dimension");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<double> current(start.begin(), start.end());
    double current_value = safe_eval(objective, current);
    AnnealingOutcome out{{current, current_value}, {}};

    std::vector<double> proposal(dim);
    double temperature = schedule.temperature0;
    for (int stage = 0; stage < schedule.stages; ++stage) {
        for (int k = 0; k < schedule.proposals_per_stage; ++k) {
            ++out.trace.proposals;
            for (std::size_t d = 0; d < dim; ++d) proposal[d] = current[d] + schedule.proposal_sd[d] * normal(rng);
            const double value = safe_eval(objective, proposal);
            if (value == -INFINITY) {
                ++out.trace.rejected_infeasible;
                continue;
            }
            const double u = uniform(rng);
            const bool accept = value >= current_value ||
                                (temperature > 0.0 && u < std::exp((value - current_value) / temperature));
            if (!accept) continue;
            ++out.trace.accepted;
            current = proposal;
            current_value = value;
            if (current_value > out.best.value) {
                out.best = {current, current_value};
                ++out.trace.improvements;
            }
        }
        out.trace.final_temperature = temperature;
        temperature *= schedule.cooling;
    }
    return out;
}

NelderMeadOutcome nelder_mead(const Objective& objective, std::span<const double> start,
                              const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    if (options.initial_step.size() != dim) throw std::invalid_argument("initial_step must match the dimension");

    // Minimize the negated objective.
    NelderMeadOutcome out;
    auto cost = [&](const std::vector<double>& x) {
        ++out.evaluations;
        return -safe_eval(objective, x);
    };

    std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t d = 0; d < dim; ++d) simplex[d + 1][d] += options.initial_step[d];
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = cost(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto blend = [&](double coef, const std::vector<double>& worst, std::vector<double>& into) {
        for (std::size_t d = 0; d < dim; ++d) into[d] = centroid[d] + coef * (worst[d] - centroid[d]);
    };

    while (out.evaluations < options.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return values[i] < values[j]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t d = 0; d < dim; ++d) size = std::max(size, std::abs(simplex[i][d] - simplex[best][d]));
        const double spread = std::abs(values[worst] - values[best]);
        if (std::isfinite(values[worst]) && size <= options.x_tolerance &&
            spread <= options.f_tolerance * (1.0 + std::abs(values[best]))) {
            out.converged = true;
            break;
        }
        if (std::isfinite(values[worst]) && size <= options.x_tolerance * 1e-3) {
            out.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != worst)
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / static_cast<double>(dim);

        blend(-1.0, simplex[worst], trial);
        const double reflected = cost(trial);
        if (reflected < values[best]) {
            blend(-2.0, simplex[worst], trial2);
            const double expanded = cost(trial2);
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
            continue;
        }
        const bool outside = reflected < values[worst];
        blend(outside ? -0.5 : 0.5, simplex[worst], trial2);
        const double contracted = cost(trial2);
        if (contracted < (outside ? reflected : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = contracted;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < dim; ++d) simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            values[i] = cost(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    out.best = {simplex[best], -values[best]};
    return out;
}

}  // namespace lagfpt
