#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lendsim/credit.hpp"
#include "lendsim/pricing.hpp"

namespace lendsim {

enum class ContractState { active, paid, defaulted };

// An originated anticipation. `next_due_index` is the next unprocessed
// period offset since origination (1..N+1); `outcome` is the realized fate
// sampled at origination.
struct LoanContract {
    int id = 0;
    int borrower_id = 0;
    ReceivableSchedule schedule;
    double anticipation_paid = 0.0;
    double p_est = 0.0;
    RateSet rates;
    std::optional<GuarantorTerms> guarantor_terms;
    int origination_period = 0;
    ContractState state = ContractState::active;
    int next_due_index = 1;
    PaymentOutcome outcome;
};

enum class TxType {
    deposit,
    withdrawal,
    anticipation,
    installment,
    collateral_in,
    collateral_settlement,
    guarantor_gain_out,
};

const char* to_string(TxType type);

// One cash movement. `amount` is the absolute value; the sign against pool
// cash is implied by the type (deposits, installments and collateral_in flow
// in, the rest flow out).
struct TxRecord {
    int period = 0;
    TxType type = TxType::deposit;
    double amount = 0.0;
};

double cash_delta(const TxRecord& record);

// Signed cash-flow totals for one period, plus the contracts terminated in it.
struct PeriodFlows {
    double accrual = 0.0;
    double deposits = 0.0;
    double withdrawals = 0.0;
    double anticipations = 0.0;
    double installments = 0.0;
    double collateral_in = 0.0;
    double collateral_out = 0.0;
    double guarantor_gains_out = 0.0;
    std::vector<std::pair<int, int>> terminated;  // (contract id, borrower id)
};

struct Valuation {
    double loan_book_value = 0.0;
    double collateral_liability = 0.0;
    double total_assets = 0.0;
    double quota_value = 1.0;
};

// Liquidity pool: cash, loan book, collateral custody and quota accounting.
//
// Collateral enters pool cash at origination and accrues with it; the
// matching liability to the guarantor is carried at V_c (1+r)^k. On default
// the liability is extinguished (the pool keeps the accrued collateral that
// already sits in cash); on survival the pool pays V_c (1+r)^N + G_s.
class PoolLedger {
public:
    double cash() const { return cash_; }
    double quota_supply() const { return quota_supply_; }
    double holdings(int investor_id) const;
    int current_period() const { return period_; }

    const std::vector<LoanContract>& contracts() const { return contracts_; }
    const LoanContract& contract(int id) const;
    const std::vector<TxRecord>& transactions() const { return transactions_; }
    const PeriodFlows& flows() const { return flows_; }

    // Accrued value of collateral currently held (including deferred
    // settlement obligations).
    double collateral_held() const;

    // Starts a period: resets the flow totals and accrues all pool cash at
    // the per-period base rate.
    void begin_period(int period, double per_period_base_rate);

    // Issues quotas at the current quota value; returns quotas issued.
    double deposit(int investor_id, double amount);

    // Full-balance withdrawal, filled up to available cash; the remainder
    // stays invested. Returns money paid.
    double withdraw(int investor_id);

    // Funds a priced contract if cash allows; rejected otherwise (loans are
    // never fractionally funded). Guaranteed contracts bring V_c into cash.
    bool originate(LoanContract contract);

    // Collects installments due this period, realizes defaults, settles
    // guarantor obligations (deferring any the cash cannot cover).
    void process_period();

    Valuation valuation(int period) const;

    void write_transactions_csv(std::ostream& out) const;

private:
    void log(TxType type, double amount);
    void settle_or_defer(const LoanContract& contract);
    void pay_pending();
    bool try_pay_settlement(double collateral_due, double gain_due);
    double contract_book_value(const LoanContract& contract, int period) const;

    struct PendingSettlement {
        int contract_id = 0;
        double collateral_due = 0.0;
        double gain_due = 0.0;
    };

    double cash_ = 0.0;
    double quota_supply_ = 0.0;
    int period_ = 0;
    std::map<int, double> holdings_;
    std::vector<LoanContract> contracts_;
    std::vector<TxRecord> transactions_;
    std::vector<PendingSettlement> pending_;
    PeriodFlows flows_;
};

}  // namespace lendsim
