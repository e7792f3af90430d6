#pragma once

#include <cstdint>
#include <vector>

#include "lendsim/agents.hpp"
#include "lendsim/config.hpp"
#include "lendsim/demand.hpp"
#include "lendsim/ledger.hpp"

namespace lendsim {

// Per-period series for one seeded run; every series has horizon+1 entries,
// index 0 being the initial state. Undefined return entries are NaN.
struct RunResult {
    std::uint64_t seed = 0;
    int horizon = 0;
    int periods_per_year = 12;
    int metric_window = 18;

    std::vector<double> cash;
    std::vector<double> loan_book;
    std::vector<double> total_assets;
    std::vector<double> quota_value;
    std::vector<double> quota_return;
    std::vector<double> trailing_return;
    std::vector<int> investor_count;
    std::vector<int> borrower_count;
    std::vector<double> vol_deposits;
    std::vector<double> vol_withdrawals;
    std::vector<double> vol_anticipations;
    std::vector<double> vol_installments;
    std::vector<double> vol_collateral_in;
    std::vector<double> vol_collateral_out;
    std::vector<double> vol_guarantor_gains;
    std::vector<double> originated_volume;
    std::vector<TxRecord> transactions;
};

// Test hooks: shuffling exercises the phase-order stability property.
struct RunOptions {
    bool shuffle_agents = false;
    std::uint64_t shuffle_seed = 0;
    bool keep_transactions = true;
};

// One simulation run owning its ledger, agents and random streams.
class Simulation {
public:
    Simulation(ScenarioConfig config, std::uint64_t seed, RunOptions options = {});

    // Advances one period: accrual, collections/settlements, investor flows,
    // borrower requests and originations, metric recording.
    void step();

    int period() const { return period_; }
    const PoolLedger& ledger() const { return ledger_; }
    const ScenarioConfig& config() const { return config_; }
    int live_borrower_count() const;
    int active_investor_count() const;

    RunResult result() const;

private:
    std::optional<double> trailing_return(int window) const;
    void investor_phase();
    void borrower_phase();
    void record_metrics();
    template <typename T>
    std::vector<T*> phase_order(std::vector<T>& agents);

    struct InvestorState {
        InvestorSpec spec;
        int entry_period = 0;
        bool active = true;
        std::mt19937_64 rng;
    };

    ScenarioConfig config_;
    RunOptions options_;
    StreamFactory streams_;
    std::mt19937_64 spawn_rng_;
    std::mt19937_64 arrival_rng_;
    std::mt19937_64 shuffle_rng_;
    double base_rate_ = 0.0;  // per period
    double spread_ = 0.0;     // per period
    RateSet rates_;
    DemandCurve demand_curve_;
    PoolLedger ledger_;
    std::vector<Borrower> borrowers_;
    std::vector<InvestorState> investors_;
    int next_borrower_id_ = 0;
    int next_investor_id_ = 0;
    int period_ = 0;
    RunResult series_;
};

std::uint64_t run_seed(std::uint64_t base_seed, int run_index);

RunResult run(const ScenarioConfig& config, std::uint64_t seed, RunOptions options = {});

// Independent runs with seeds derived from (base_seed, index); any thread
// count yields the identical ensemble.
std::vector<RunResult> run_batch(const ScenarioConfig& config, int n_runs,
                                 std::uint64_t base_seed, int threads = 1,
                                 RunOptions options = {});

}  // namespace lendsim
