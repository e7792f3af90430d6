#include "lendsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace lendsim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kRunSeedPurpose = 0x52554e53ULL;  // per-run seed derivation
constexpr std::uint64_t kShufflePurpose = 99;
}  // namespace

Simulation::Simulation(ScenarioConfig config, std::uint64_t seed, RunOptions options)
    : config_(std::move(config)),
      options_(options),
      streams_(seed),
      spawn_rng_(streams_.stream(stream_purpose::spawn)),
      arrival_rng_(streams_.stream(stream_purpose::investor_arrival)),
      shuffle_rng_(std::mt19937_64(mix_seed(options.shuffle_seed, kShufflePurpose))) {
    validate_config(config_);
    base_rate_ = config_.per_period_base_rate();
    spread_ = config_.per_period_spread();
    rates_ = RateSet{base_rate_, spread_};
    demand_curve_ = make_demand_curve(config_.demand.steepness,
                                      config_.per_period_reference_spread());

    series_.seed = seed;
    series_.horizon = config_.horizon;
    series_.periods_per_year = config_.periods_per_year;
    series_.metric_window = config_.metric_window;

    // t = 0: the initial configuration, seeded by the seed investor.
    ledger_.begin_period(0, 0.0);
    InvestorState seed_investor;
    seed_investor.spec.id = next_investor_id_++;
    seed_investor.spec.amount = config_.seed_investor.amount;
    seed_investor.spec.is_seed = true;
    seed_investor.entry_period = 0;
    seed_investor.rng = streams_.stream(stream_purpose::investor_decision,
                                        static_cast<std::uint64_t>(seed_investor.spec.id));
    ledger_.deposit(seed_investor.spec.id, seed_investor.spec.amount);
    investors_.push_back(std::move(seed_investor));
    record_metrics();
}

int Simulation::live_borrower_count() const {
    int count = 0;
    for (const auto& b : borrowers_) {
        if (!b.departed) ++count;
    }
    return count;
}

int Simulation::active_investor_count() const {
    int count = 0;
    for (const auto& inv : investors_) {
        if (inv.active) ++count;
    }
    return count;
}

std::optional<double> Simulation::trailing_return(int window) const {
    const int t = period_ - 1;  // last recorded period
    if (window < 1 || t - window < 0) {
        return std::nullopt;
    }
    const double now = series_.quota_value[static_cast<std::size_t>(t)];
    const double then = series_.quota_value[static_cast<std::size_t>(t - window)];
    if (!(then > 0.0)) {
        return std::nullopt;
    }
    const double per_year = static_cast<double>(config_.periods_per_year) / window;
    return std::pow(now / then, per_year) - 1.0;
}

template <typename T>
std::vector<T*> Simulation::phase_order(std::vector<T>& agents) {
    std::vector<T*> order;
    order.reserve(agents.size());
    for (auto& a : agents) order.push_back(&a);
    if (options_.shuffle_agents) {
        std::shuffle(order.begin(), order.end(), shuffle_rng_);
    }
    return order;
}

void Simulation::investor_phase() {
    // Withdrawal decisions first, then entries; both keep the quota value
    // unchanged, so intra-phase ordering cannot move valuations.
    for (auto* inv : phase_order(investors_)) {
        if (!inv->active) continue;
        if (inv->spec.is_seed && config_.seed_investor.permanent) continue;
        const int age = period_ - inv->entry_period;
        const auto trailing = trailing_return(inv->spec.eval_window);
        const auto action = investor_decision(inv->spec, age, trailing, inv->rng);
        if (action == InvestorAction::withdraw) {
            ledger_.withdraw(inv->spec.id);
            inv->active = false;
        }
    }
    for (int k = 0; k < config_.investors.arrivals_per_period; ++k) {
        InvestorState inv;
        inv.spec.id = next_investor_id_++;
        inv.spec.amount = config_.investors.amount.sample(arrival_rng_);
        inv.spec.expected_return =
            config_.investors.annual_expected_return.sample(arrival_rng_);
        inv.spec.eval_window = config_.investors.eval_window.sample(arrival_rng_);
        inv.spec.profit_withdraw_rate =
            config_.investors.profit_withdraw_rate.sample(arrival_rng_);
        inv.spec.loss_withdraw_rate =
            config_.investors.loss_withdraw_rate.sample(arrival_rng_);
        inv.spec.min_holding = config_.investors.min_holding.sample(arrival_rng_);
        const auto trailing = trailing_return(inv.spec.eval_window);
        if (!investor_wants_entry(inv.spec, trailing, config_.investors.enter_blind)) {
            continue;  // declined entrants depart
        }
        inv.entry_period = period_;
        inv.rng = streams_.stream(stream_purpose::investor_decision,
                                  static_cast<std::uint64_t>(inv.spec.id));
        ledger_.deposit(inv.spec.id, inv.spec.amount);
        investors_.push_back(std::move(inv));
    }
}

void Simulation::borrower_phase() {
    auto newcomers = spawn_borrowers(config_, period_, live_borrower_count(),
                                     next_borrower_id_, spawn_rng_, streams_);
    for (auto& b : newcomers) borrowers_.push_back(std::move(b));

    for (auto* b : phase_order(borrowers_)) {
        if (b->departed || b->spec.active_contract ||
            period_ < b->next_request_period) {
            continue;
        }
        const double p_est =
            estimate_default_prob(config_.rating, b->spec.p_true, b->rating_rng);
        const bool refused = p_est > config_.p_refuse;
        const auto schedule = ReceivableSchedule::equal_installments(
            b->spec.schedule_total, b->spec.n_installments);

        const double plain = anticipation(schedule, p_est, rates_);
        std::optional<double> guaranteed;
        std::optional<GuarantorTerms> terms;
        if (b->guarantor) {
            terms = guarantor_offer(*b->guarantor, b->spec.p_true, base_rate_,
                                    schedule.last_period(), b->guarantor_rng);
            if (terms) {
                guaranteed = anticipation_with_guarantor(schedule, p_est, rates_, *terms);
            }
        }

        OfferChoice choice;
        if (config_.guarantors.policy == GuarantorPolicy::forced && guaranteed) {
            choice = (refused || *guaranteed <= 0.0) ? OfferChoice::none
                                                     : OfferChoice::guaranteed;
        } else {
            choice = select_offer(plain, guaranteed, config_.improvement_threshold,
                                  refused);
        }
        if (choice == OfferChoice::none) continue;

        const double offered = choice == OfferChoice::guaranteed ? *guaranteed : plain;
        const double reference =
            reference_anticipation(schedule, p_est, base_rate_, demand_curve_);
        const double accept_prob =
            acceptance_probability(demand_curve_, offered, reference);
        if (uniform01(b->accept_rng) >= accept_prob) continue;

        LoanContract contract;
        contract.borrower_id = b->spec.id;
        contract.schedule = schedule;
        contract.anticipation_paid = offered;
        contract.p_est = p_est;
        contract.rates = rates_;
        if (choice == OfferChoice::guaranteed) {
            contract.guarantor_terms = terms;
        }
        contract.origination_period = period_;
        contract.outcome =
            sample_payment_outcome(b->spec.p_true, schedule.last_period(),
                                   b->payment_rng);
        if (ledger_.originate(std::move(contract))) {
            b->spec.active_contract = ledger_.contracts().back().id;
        }
        // Unfunded requests stay live and retry next period.
    }
}

void Simulation::record_metrics() {
    const auto v = ledger_.valuation(period_);
    const auto& f = ledger_.flows();
    const auto t = static_cast<std::size_t>(period_);

    series_.cash.push_back(ledger_.cash());
    series_.loan_book.push_back(v.loan_book_value);
    series_.total_assets.push_back(v.total_assets);
    series_.quota_value.push_back(v.quota_value);
    if (t == 0) {
        series_.quota_return.push_back(kNaN);
    } else {
        const double prev = series_.quota_value[t - 1];
        series_.quota_return.push_back(v.quota_value / prev - 1.0);
    }
    const int window = config_.metric_window;
    if (static_cast<int>(t) >= window && window >= 1) {
        const double then = series_.quota_value[t - static_cast<std::size_t>(window)];
        const double per_year = static_cast<double>(config_.periods_per_year) / window;
        series_.trailing_return.push_back(std::pow(v.quota_value / then, per_year) -
                                          1.0);
    } else {
        series_.trailing_return.push_back(kNaN);
    }
    series_.investor_count.push_back(active_investor_count());
    series_.borrower_count.push_back(live_borrower_count());
    series_.vol_deposits.push_back(f.deposits);
    series_.vol_withdrawals.push_back(f.withdrawals);
    series_.vol_anticipations.push_back(f.anticipations);
    series_.vol_installments.push_back(f.installments);
    series_.vol_collateral_in.push_back(f.collateral_in);
    series_.vol_collateral_out.push_back(f.collateral_out);
    series_.vol_guarantor_gains.push_back(f.guarantor_gains_out);
    series_.originated_volume.push_back(f.anticipations);
}

void Simulation::step() {
    ++period_;
    ledger_.begin_period(period_, base_rate_);
    ledger_.process_period();
    for (const auto& [contract_id, borrower_id] : ledger_.flows().terminated) {
        // Borrower ids are assigned in creation order, so they index the vector.
        auto& b = borrowers_.at(static_cast<std::size_t>(borrower_id));
        b.spec.active_contract.reset();
        switch (config_.borrowers.mode) {
            case BorrowerMode::constant:
            case BorrowerMode::arrivals:
                b.departed = true;
                break;
            case BorrowerMode::recurring:
                b.next_request_period = period_ + 1;
                break;
        }
    }
    investor_phase();
    borrower_phase();
    record_metrics();
}

RunResult Simulation::result() const {
    RunResult out = series_;
    out.horizon = period_;  // periods actually executed
    if (options_.keep_transactions) {
        out.transactions = ledger_.transactions();
    }
    return out;
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index) {
    return mix_seed(mix_seed(base_seed, kRunSeedPurpose),
                    static_cast<std::uint64_t>(run_index));
}

RunResult run(const ScenarioConfig& config, std::uint64_t seed, RunOptions options) {
    Simulation sim(config, seed, options);
    for (int t = 1; t <= config.horizon; ++t) {
        sim.step();
    }
    return sim.result();
}

std::vector<RunResult> run_batch(const ScenarioConfig& config, int n_runs,
                                 std::uint64_t base_seed, int threads,
                                 RunOptions options) {
    if (n_runs < 1) {
        throw std::invalid_argument("n_runs must be >= 1");
    }
    std::vector<RunResult> results(static_cast<std::size_t>(n_runs));
    if (threads <= 1) {
        for (int i = 0; i < n_runs; ++i) {
            results[static_cast<std::size_t>(i)] =
                run(config, run_seed(base_seed, i), options);
        }
        return results;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n_runs) break;
            results[static_cast<std::size_t>(i)] =
                run(config, run_seed(base_seed, i), options);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min(threads, n_runs);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace lendsim
