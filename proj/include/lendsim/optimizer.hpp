#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lendsim/engine.hpp"

namespace lendsim {

enum class SweepObjective { mean_book, terminal_book, cumulative_originated };

SweepObjective objective_from_name(const std::string& name);
const char* to_string(SweepObjective objective);

double run_objective(const RunResult& result, SweepObjective objective);

struct CandidateResult {
    double annual_spread = 0.0;
    std::vector<double> samples;  // objective value per run
    double mean = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double relative_volume = 1.0;  // mean / lowest candidate mean
};

struct SweepResult {
    SweepObjective objective = SweepObjective::mean_book;
    std::vector<CandidateResult> candidates;
};

// Grid sweep over the annual platform spread. Every candidate reuses the
// same derived per-run seeds (common random numbers).
SweepResult sweep_spread(const ScenarioConfig& config,
                         const std::vector<double>& annual_spreads, int n_runs,
                         std::uint64_t base_seed,
                         SweepObjective objective = SweepObjective::mean_book,
                         int threads = 1);

// Highest mean objective; candidates within one standard error of the best
// mean tie toward the lowest spread.
double select_best(const SweepResult& result);

}  // namespace lendsim
