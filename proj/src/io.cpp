#include "lendsim/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lendsim/metrics.hpp"
#include "lendsim/optimizer.hpp"

namespace lendsim {

using nlohmann::json;

const char* const kToolVersion = "0.1.0";

std::string format_double(double value) {
    if (std::isnan(value)) return "";
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) {
        return "0";
    }
    return std::string(buffer, ptr);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string config_digest(const ScenarioConfig& config) {
    const std::uint64_t hash = fnv1a64(config_to_json_text(config, -1));
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << hash;
    return out.str();
}

void write_series_csv(std::ostream& out, const std::vector<RunResult>& runs) {
    out << "run,period,cash,loan_book_value,total_assets,quota_value,quota_return,"
           "trailing_return,investor_count,borrower_count,deposits,withdrawals,"
           "anticipations,installments,collateral_in,collateral_out,guarantor_gains,"
           "originated_volume\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto& run = runs[r];
        for (std::size_t t = 0; t < run.quota_value.size(); ++t) {
            out << r << ',' << t << ',' << format_double(run.cash[t]) << ','
                << format_double(run.loan_book[t]) << ','
                << format_double(run.total_assets[t]) << ','
                << format_double(run.quota_value[t]) << ','
                << format_double(run.quota_return[t]) << ','
                << format_double(run.trailing_return[t]) << ','
                << run.investor_count[t] << ',' << run.borrower_count[t] << ','
                << format_double(run.vol_deposits[t]) << ','
                << format_double(run.vol_withdrawals[t]) << ','
                << format_double(run.vol_anticipations[t]) << ','
                << format_double(run.vol_installments[t]) << ','
                << format_double(run.vol_collateral_in[t]) << ','
                << format_double(run.vol_collateral_out[t]) << ','
                << format_double(run.vol_guarantor_gains[t]) << ','
                << format_double(run.originated_volume[t]) << '\n';
        }
    }
}

void write_transactions_csv(std::ostream& out, const std::vector<RunResult>& runs) {
    out << "run,period,type,amount\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
        for (const auto& tx : runs[r].transactions) {
            out << r << ',' << tx.period << ',' << to_string(tx.type) << ','
                << format_double(tx.amount) << '\n';
        }
    }
}

namespace {

json stats_to_json(const SeriesStats& stats) {
    auto series = [](const std::vector<double>& v) {
        json arr = json::array();
        for (double x : v) {
            if (std::isnan(x)) {
                arr.push_back(nullptr);
            } else {
                arr.push_back(x);
            }
        }
        return arr;
    };
    return json{{"mean", series(stats.mean)}, {"min", series(stats.min)},
                {"q1", series(stats.q1)},     {"median", series(stats.median)},
                {"q3", series(stats.q3)},     {"max", series(stats.max)}};
}

std::vector<std::vector<double>> gather(const std::vector<RunResult>& runs,
                                        std::vector<double> RunResult::*member) {
    std::vector<std::vector<double>> out;
    out.reserve(runs.size());
    for (const auto& r : runs) out.push_back(r.*member);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    out << content;
}

}  // namespace

std::string summary_json(const ScenarioConfig& config,
                         const std::vector<RunResult>& runs) {
    json j;
    j["runs"] = runs.size();
    j["horizon"] = config.horizon;
    j["metrics"] = json{
        {"cash", stats_to_json(ensemble_stats(gather(runs, &RunResult::cash)))},
        {"loan_book_value",
         stats_to_json(ensemble_stats(gather(runs, &RunResult::loan_book)))},
        {"total_assets",
         stats_to_json(ensemble_stats(gather(runs, &RunResult::total_assets)))},
        {"quota_value",
         stats_to_json(ensemble_stats(gather(runs, &RunResult::quota_value)))},
        {"quota_return",
         stats_to_json(ensemble_stats(gather(runs, &RunResult::quota_return)))},
        {"trailing_return",
         stats_to_json(ensemble_stats(gather(runs, &RunResult::trailing_return)))},
    };
    std::vector<double> terminal_ratio;
    terminal_ratio.reserve(runs.size());
    for (const auto& r : runs) {
        terminal_ratio.push_back(r.total_assets.back() / r.total_assets.front());
    }
    j["terminal_assets_ratio_mean"] = series_mean(terminal_ratio);
    return j.dump(2);
}

std::string manifest_json(const ScenarioConfig& config, const std::string& command,
                          std::uint64_t seed, int runs, int threads) {
    json j;
    j["tool"] = "lendsim";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = seed;
    j["runs"] = runs;
    j["threads"] = threads;
    j["config_digest"] = config_digest(config);
    j["config"] = json::parse(config_to_json_text(config, -1));
    return j.dump(2);
}

void write_simulation_bundle(const std::string& out_dir, const ScenarioConfig& config,
                             std::uint64_t seed, int threads,
                             const std::vector<RunResult>& runs,
                             bool with_transactions) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "manifest.json",
               manifest_json(config, "simulate", seed, static_cast<int>(runs.size()),
                             threads));
    std::ostringstream series;
    write_series_csv(series, runs);
    write_file(dir / "series.csv", series.str());
    write_file(dir / "summary.json", summary_json(config, runs));
    if (with_transactions) {
        std::ostringstream tx;
        write_transactions_csv(tx, runs);
        write_file(dir / "transactions.csv", tx.str());
    }
}

void write_sweep_bundle(const std::string& out_dir, const ScenarioConfig& config,
                        std::uint64_t seed, int runs, int threads,
                        const SweepResult& sweep) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "manifest.json",
               manifest_json(config, "optimize", seed, runs, threads));

    std::ostringstream samples;
    samples << "annual_spread,run,objective\n";
    for (const auto& candidate : sweep.candidates) {
        for (std::size_t i = 0; i < candidate.samples.size(); ++i) {
            samples << format_double(candidate.annual_spread) << ',' << i << ','
                    << format_double(candidate.samples[i]) << '\n';
        }
    }
    write_file(dir / "samples.csv", samples.str());

    json j;
    j["objective"] = to_string(sweep.objective);
    j["best_spread"] = select_best(sweep);
    json candidates = json::array();
    for (const auto& c : sweep.candidates) {
        candidates.push_back(json{{"annual_spread", c.annual_spread},
                                  {"mean", c.mean},
                                  {"std_error", c.std_error},
                                  {"min", c.min},
                                  {"q1", c.q1},
                                  {"median", c.median},
                                  {"q3", c.q3},
                                  {"max", c.max},
                                  {"relative_volume", c.relative_volume}});
    }
    j["candidates"] = candidates;
    write_file(dir / "best.json", j.dump(2));
}

}  // namespace lendsim
