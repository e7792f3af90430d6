#include "lendsim/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "lendsim/metrics.hpp"

namespace lendsim {

SweepObjective objective_from_name(const std::string& name) {
    if (name == "mean") return SweepObjective::mean_book;
    if (name == "terminal") return SweepObjective::terminal_book;
    if (name == "cumulative") return SweepObjective::cumulative_originated;
    throw std::invalid_argument("unknown objective: " + name);
}

const char* to_string(SweepObjective objective) {
    switch (objective) {
        case SweepObjective::mean_book: return "mean";
        case SweepObjective::terminal_book: return "terminal";
        case SweepObjective::cumulative_originated: return "cumulative";
    }
    return "unknown";
}

double run_objective(const RunResult& result, SweepObjective objective) {
    switch (objective) {
        case SweepObjective::mean_book: {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t t = 1; t < result.loan_book.size(); ++t) {
                sum += result.loan_book[t];
                ++count;
            }
            return count == 0 ? 0.0 : sum / static_cast<double>(count);
        }
        case SweepObjective::terminal_book:
            return result.loan_book.empty() ? 0.0 : result.loan_book.back();
        case SweepObjective::cumulative_originated: {
            double sum = 0.0;
            for (double v : result.originated_volume) sum += v;
            return sum;
        }
    }
    return 0.0;
}

SweepResult sweep_spread(const ScenarioConfig& config,
                         const std::vector<double>& annual_spreads, int n_runs,
                         std::uint64_t base_seed, SweepObjective objective,
                         int threads) {
    if (annual_spreads.empty()) {
        throw std::invalid_argument("spread list is empty");
    }
    for (std::size_t i = 0; i < annual_spreads.size(); ++i) {
        for (std::size_t j = i + 1; j < annual_spreads.size(); ++j) {
            if (annual_spreads[i] == annual_spreads[j]) {
                throw std::invalid_argument("spread candidates must be distinct");
            }
        }
    }
    if (n_runs < 1) {
        throw std::invalid_argument("n_runs must be >= 1");
    }

    SweepResult result;
    result.objective = objective;
    RunOptions options;
    options.keep_transactions = false;
    for (double spread : annual_spreads) {
        ScenarioConfig candidate_config = config;
        candidate_config.annual_spread = spread;
        auto runs = run_batch(candidate_config, n_runs, base_seed, threads, options);

        CandidateResult candidate;
        candidate.annual_spread = spread;
        candidate.samples.reserve(runs.size());
        for (const auto& r : runs) {
            candidate.samples.push_back(run_objective(r, objective));
        }
        candidate.mean = series_mean(candidate.samples);
        candidate.std_error = sample_std_error(candidate.samples);
        // Box statistics over the samples: treat each sample as a one-entry
        // series so the quartile convention matches ensemble_stats.
        std::vector<std::vector<double>> columns;
        columns.reserve(candidate.samples.size());
        for (double s : candidate.samples) columns.push_back({s});
        const auto stats = ensemble_stats(columns);
        candidate.min = stats.min.front();
        candidate.q1 = stats.q1.front();
        candidate.median = stats.median.front();
        candidate.q3 = stats.q3.front();
        candidate.max = stats.max.front();
        result.candidates.push_back(std::move(candidate));
    }

    double lowest_mean = std::numeric_limits<double>::infinity();
    for (const auto& candidate : result.candidates) {
        lowest_mean = std::min(lowest_mean, candidate.mean);
    }
    for (auto& candidate : result.candidates) {
        candidate.relative_volume =
            lowest_mean > 0.0 ? candidate.mean / lowest_mean : 1.0;
    }
    return result;
}

double select_best(const SweepResult& result) {
    if (result.candidates.empty()) {
        throw std::invalid_argument("sweep result is empty");
    }
    const CandidateResult* best = &result.candidates.front();
    for (const auto& candidate : result.candidates) {
        if (candidate.mean > best->mean) best = &candidate;
    }
    // Ties within one standard error of the best mean break low.
    double chosen_spread = best->annual_spread;
    for (const auto& candidate : result.candidates) {
        if (candidate.mean >= best->mean - best->std_error &&
            candidate.annual_spread < chosen_spread) {
            chosen_spread = candidate.annual_spread;
        }
    }
    return chosen_spread;
}

}  // namespace lendsim
