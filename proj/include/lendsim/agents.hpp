#pragma once

#include <optional>
#include <random>
#include <vector>

#include "lendsim/config.hpp"
#include "lendsim/credit.hpp"
#include "lendsim/pricing.hpp"
#include "lendsim/rng.hpp"

namespace lendsim {

struct BorrowerSpec {
    int id = 0;
    double p_true = 0.0;
    double schedule_total = 0.0;
    int n_installments = 1;
    bool has_guarantor = false;
    std::optional<int> active_contract;
};

struct GuarantorSpec {
    int id = 0;
    double collateral = 0.0;   // V_c, locked for the lifetime of one loan
    double extra_spread = 0.0; // s_g, per period
    RatingModel rating;
};

struct InvestorSpec {
    int id = 0;
    double amount = 0.0;
    double expected_return = 0.0;  // annualized
    int eval_window = 1;
    double profit_withdraw_rate = 0.0;
    double loss_withdraw_rate = 0.0;
    int min_holding = 0;
    bool is_seed = false;
};

enum class InvestorAction { invest, hold, withdraw };

// Runtime borrower: spec, attached guarantor, and the dedicated random
// streams for rating noise, acceptance draws, payment outcomes and guarantor
// sampling. Per-agent streams keep runs comparable when one agent class is
// reconfigured.
struct Borrower {
    BorrowerSpec spec;
    std::optional<GuarantorSpec> guarantor;
    bool departed = false;
    int next_request_period = 0;
    std::mt19937_64 rating_rng;
    std::mt19937_64 accept_rng;
    std::mt19937_64 payment_rng;
    std::mt19937_64 guarantor_rng;
};

// Stream purposes used to fork per-agent randomness off a run's master seed.
namespace stream_purpose {
inline constexpr std::uint64_t spawn = 1;
inline constexpr std::uint64_t borrower_rating = 2;
inline constexpr std::uint64_t borrower_accept = 3;
inline constexpr std::uint64_t borrower_payment = 4;
inline constexpr std::uint64_t borrower_guarantor = 5;
inline constexpr std::uint64_t investor_decision = 6;
inline constexpr std::uint64_t investor_arrival = 7;
}  // namespace stream_purpose

// Creates `count` borrowers with draws from the population distributions.
// The guarantor flag consumes one uniform per borrower regardless of the
// configured frequency; guarantor terms draw from the borrower's own stream.
std::vector<Borrower> create_borrowers(const ScenarioConfig& config, int count,
                                       int period, int& next_id,
                                       std::mt19937_64& spawn_rng,
                                       const StreamFactory& streams);

// Population top-up for one period. Constant mode replaces departed
// borrowers up to the configured size; recurring mode spawns the population
// once at the first period; arrivals mode adds a fixed count every period.
std::vector<Borrower> spawn_borrowers(const ScenarioConfig& config, int period,
                                      int live_count, int& next_id,
                                      std::mt19937_64& spawn_rng,
                                      const StreamFactory& streams);

// Guarantor quote for one borrower. Returns the terms satisfying the
// indifference identity (1-p_g)^N (V_c (1+r)^N + G_s) = V_c (1+r+s_g)^N, or
// nothing if the guarantor's estimate reaches 1.
std::optional<GuarantorTerms> guarantor_offer(const GuarantorSpec& guarantor,
                                              double borrower_p_true,
                                              double base_rate, int n_periods,
                                              std::mt19937_64& rating_rng);

// Entry rule: invest iff the trailing return meets the expected return; with
// insufficient history the enter_blind flag decides.
bool investor_wants_entry(const InvestorSpec& inv,
                          std::optional<double> trailing_return, bool enter_blind);

// Post-entry rule: hold inside the minimum holding period, then withdraw
// with the profit rate when performance meets expectations, else with the
// loss rate. Undefined trailing performance takes the loss branch.
InvestorAction investor_decision(const InvestorSpec& inv, int holding_age,
                                 std::optional<double> trailing_return,
                                 std::mt19937_64& rng);

}  // namespace lendsim
