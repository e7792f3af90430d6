#include "lendsim/ledger.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lendsim/format.hpp"

namespace lendsim {

const char* to_string(TxType type) {
    switch (type) {
        case TxType::deposit: return "deposit";
        case TxType::withdrawal: return "withdrawal";
        case TxType::anticipation: return "anticipation";
        case TxType::installment: return "installment";
        case TxType::collateral_in: return "collateral_in";
        case TxType::collateral_settlement: return "collateral_settlement";
        case TxType::guarantor_gain_out: return "guarantor_gain_out";
    }
    return "unknown";
}

double cash_delta(const TxRecord& record) {
    switch (record.type) {
        case TxType::deposit:
        case TxType::installment:
        case TxType::collateral_in:
            return record.amount;
        case TxType::withdrawal:
        case TxType::anticipation:
        case TxType::collateral_settlement:
        case TxType::guarantor_gain_out:
            return -record.amount;
    }
    return 0.0;
}

double PoolLedger::holdings(int investor_id) const {
    auto it = holdings_.find(investor_id);
    return it == holdings_.end() ? 0.0 : it->second;
}

const LoanContract& PoolLedger::contract(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= contracts_.size()) {
        throw std::invalid_argument("unknown contract id");
    }
    return contracts_[static_cast<std::size_t>(id)];
}

double PoolLedger::collateral_held() const {
    double held = 0.0;
    for (const auto& c : contracts_) {
        if (c.state != ContractState::active || !c.guarantor_terms) continue;
        const int elapsed = period_ - c.origination_period;
        held += c.guarantor_terms->collateral *
                std::pow(1.0 + c.rates.base_rate, elapsed);
    }
    for (const auto& p : pending_) held += p.collateral_due;
    return held;
}

void PoolLedger::begin_period(int period, double per_period_base_rate) {
    period_ = period;
    flows_ = PeriodFlows{};
    const double accrual = cash_ * per_period_base_rate;
    cash_ += accrual;
    flows_.accrual = accrual;
}

void PoolLedger::log(TxType type, double amount) {
    transactions_.push_back(TxRecord{period_, type, amount});
}

double PoolLedger::deposit(int investor_id, double amount) {
    if (!(amount > 0.0) || !std::isfinite(amount)) {
        throw std::invalid_argument("deposit amount must be positive");
    }
    const double quota_value = valuation(period_).quota_value;
    const double quotas = amount / quota_value;
    cash_ += amount;
    quota_supply_ += quotas;
    holdings_[investor_id] += quotas;
    flows_.deposits += amount;
    log(TxType::deposit, amount);
    return quotas;
}

double PoolLedger::withdraw(int investor_id) {
    auto it = holdings_.find(investor_id);
    if (it == holdings_.end() || !(it->second > 0.0)) {
        throw std::invalid_argument("unknown investor");
    }
    const double quota_value = valuation(period_).quota_value;
    const double requested = it->second * quota_value;
    double paid = 0.0;
    if (cash_ >= requested) {
        paid = requested;
        quota_supply_ -= it->second;
        holdings_.erase(it);
    } else {
        paid = cash_;
        if (!(paid > 0.0)) {
            return 0.0;  // degenerate fill, holdings unchanged
        }
        const double burned = paid / quota_value;
        it->second -= burned;
        quota_supply_ -= burned;
    }
    cash_ -= paid;
    flows_.withdrawals += paid;
    log(TxType::withdrawal, paid);
    return paid;
}

bool PoolLedger::originate(LoanContract contract) {
    if (contract.schedule.empty()) {
        throw std::invalid_argument("contract schedule is empty");
    }
    if (cash_ < contract.anticipation_paid) {
        return false;  // refused, never fractionally funded
    }
    cash_ -= contract.anticipation_paid;
    flows_.anticipations += contract.anticipation_paid;
    log(TxType::anticipation, contract.anticipation_paid);
    if (contract.guarantor_terms) {
        const double collateral = contract.guarantor_terms->collateral;
        cash_ += collateral;
        flows_.collateral_in += collateral;
        log(TxType::collateral_in, collateral);
    }
    contract.id = static_cast<int>(contracts_.size());
    contract.state = ContractState::active;
    contracts_.push_back(std::move(contract));
    return true;
}

bool PoolLedger::try_pay_settlement(double collateral_due, double gain_due) {
    const double owed = collateral_due + gain_due;
    if (cash_ < owed) {
        return false;
    }
    cash_ -= owed;
    flows_.collateral_out += collateral_due;
    log(TxType::collateral_settlement, collateral_due);
    if (gain_due > 0.0) {
        flows_.guarantor_gains_out += gain_due;
        log(TxType::guarantor_gain_out, gain_due);
    }
    return true;
}

void PoolLedger::settle_or_defer(const LoanContract& contract) {
    const auto& terms = *contract.guarantor_terms;
    const int n = contract.schedule.last_period();
    const double collateral_due =
        terms.collateral * std::pow(1.0 + contract.rates.base_rate, n);
    if (!try_pay_settlement(collateral_due, terms.asked_gain)) {
        pending_.push_back({contract.id, collateral_due, terms.asked_gain});
    }
}

void PoolLedger::pay_pending() {
    for (auto it = pending_.begin(); it != pending_.end();) {
        if (try_pay_settlement(it->collateral_due, it->gain_due)) {
            it = pending_.erase(it);
        } else {
            ++it;
        }
    }
}

void PoolLedger::process_period() {
    // Deferred guarantor settlements first; they are the oldest obligations.
    pay_pending();

    for (auto& c : contracts_) {
        if (c.state != ContractState::active) continue;
        const int offset = period_ - c.origination_period;
        if (offset < 1 || offset > c.schedule.last_period()) continue;

        if (c.outcome.default_period && *c.outcome.default_period == offset) {
            // Pool keeps the accrued collateral already sitting in cash; the
            // liability to the guarantor is extinguished with no cash flow.
            c.state = ContractState::defaulted;
            flows_.terminated.emplace_back(c.id, c.borrower_id);
            continue;
        }
        for (const auto& inst : c.schedule.installments()) {
            if (inst.period == offset) {
                cash_ += inst.amount;
                flows_.installments += inst.amount;
                log(TxType::installment, inst.amount);
                break;
            }
        }
        c.next_due_index = offset + 1;
        if (offset == c.schedule.last_period()) {
            c.state = ContractState::paid;
            flows_.terminated.emplace_back(c.id, c.borrower_id);
            if (c.guarantor_terms) {
                settle_or_defer(c);
            }
        }
    }

    // Retry anything still deferred now that this period's installments are in.
    pay_pending();
}

double PoolLedger::contract_book_value(const LoanContract& c, int period) const {
    if (c.state != ContractState::active) return 0.0;
    const int elapsed = period - c.origination_period;
    const double survive = 1.0 - c.p_est;
    const double discount = 1.0 + c.rates.base_rate + c.rates.spread;
    double value = 0.0;
    for (const auto& inst : c.schedule.installments()) {
        if (inst.period <= elapsed) continue;
        const int steps = inst.period - elapsed;
        value += std::pow(survive, steps) * inst.amount / std::pow(discount, steps);
    }
    if (c.guarantor_terms) {
        const auto& terms = *c.guarantor_terms;
        const int n = c.schedule.last_period();
        const int steps_to_last = n - elapsed;
        value -= std::pow(survive, steps_to_last) * terms.asked_gain /
                 std::pow(discount, steps_to_last);
        for (int j = elapsed + 1; j <= n; ++j) {
            value += std::pow(survive, j - elapsed - 1) * c.p_est * terms.collateral *
                     std::pow(1.0 + c.rates.base_rate, j) /
                     std::pow(discount, j - elapsed);
        }
    }
    return value;
}

Valuation PoolLedger::valuation(int period) const {
    Valuation v;
    for (const auto& c : contracts_) {
        if (c.state != ContractState::active) continue;
        v.loan_book_value += contract_book_value(c, period);
        if (c.guarantor_terms) {
            const int elapsed = period - c.origination_period;
            v.collateral_liability += c.guarantor_terms->collateral *
                                      std::pow(1.0 + c.rates.base_rate, elapsed);
        }
    }
    for (const auto& p : pending_) {
        v.collateral_liability += p.collateral_due + p.gain_due;
    }
    v.total_assets = cash_ + v.loan_book_value - v.collateral_liability;
    v.quota_value = quota_supply_ > 0.0 ? v.total_assets / quota_supply_ : 1.0;
    return v;
}

void PoolLedger::write_transactions_csv(std::ostream& out) const {
    out << "period,type,amount\n";
    for (const auto& tx : transactions_) {
        out << tx.period << ',' << to_string(tx.type) << ',' << format_double(tx.amount)
            << '\n';
    }
}

}  // namespace lendsim
