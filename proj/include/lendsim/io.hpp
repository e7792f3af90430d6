#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lendsim/config.hpp"
#include "lendsim/engine.hpp"
#include "lendsim/format.hpp"
#include "lendsim/optimizer.hpp"

namespace lendsim {

extern const char* const kToolVersion;

std::uint64_t fnv1a64(const std::string& text);
std::string config_digest(const ScenarioConfig& config);

// Fixed column order; one row per period per run. Absent values (NaN) render
// as empty fields.
void write_series_csv(std::ostream& out, const std::vector<RunResult>& runs);

void write_transactions_csv(std::ostream& out, const std::vector<RunResult>& runs);

// Per-metric ensemble stats (mean/min/q1/median/q3/max arrays per period).
std::string summary_json(const ScenarioConfig& config,
                         const std::vector<RunResult>& runs);

std::string manifest_json(const ScenarioConfig& config, const std::string& command,
                          std::uint64_t seed, int runs, int threads);

// Output bundle for `simulate`: manifest.json, series.csv, summary.json and
// optionally transactions.csv under out_dir.
void write_simulation_bundle(const std::string& out_dir, const ScenarioConfig& config,
                             std::uint64_t seed, int threads,
                             const std::vector<RunResult>& runs,
                             bool with_transactions);

// Output bundle for `optimize`: manifest.json, samples.csv (boxplot-ready)
// and best.json.
void write_sweep_bundle(const std::string& out_dir, const ScenarioConfig& config,
                        std::uint64_t seed, int runs, int threads,
                        const SweepResult& sweep);

}  // namespace lendsim
