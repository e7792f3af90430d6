#include "lendsim/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace lendsim {

namespace {

void check_rates(const RateSet& rates) {
    if (!std::isfinite(rates.base_rate) || !std::isfinite(rates.spread)) {
        throw std::invalid_argument("rates must be finite");
    }
    if (rates.base_rate < 0.0 || rates.spread < 0.0) {
        throw std::invalid_argument("rates must be non-negative");
    }
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " outside [0, 1]");
    }
}

}  // namespace

ReceivableSchedule::ReceivableSchedule(std::vector<Installment> installments)
    : installments_(std::move(installments)) {
    int prev = 0;
    for (const auto& inst : installments_) {
        if (inst.period < 1) {
            throw std::invalid_argument("installment period indices must be >= 1");
        }
        if (inst.period <= prev) {
            throw std::invalid_argument("installment periods must be strictly increasing");
        }
        if (!(inst.amount > 0.0) || !std::isfinite(inst.amount)) {
            throw std::invalid_argument("installment amounts must be positive");
        }
        prev = inst.period;
    }
}

ReceivableSchedule ReceivableSchedule::equal_installments(double total, int count) {
    if (count < 1) {
        throw std::invalid_argument("installment count must be >= 1");
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("schedule total must be positive");
    }
    std::vector<Installment> installments;
    installments.reserve(static_cast<std::size_t>(count));
    const double amount = total / count;
    for (int i = 1; i <= count; ++i) {
        installments.push_back({i, amount});
    }
    return ReceivableSchedule(std::move(installments));
}

int ReceivableSchedule::last_period() const {
    return installments_.empty() ? 0 : installments_.back().period;
}

double ReceivableSchedule::total() const {
    double sum = 0.0;
    for (const auto& inst : installments_) sum += inst.amount;
    return sum;
}

double anticipation(const ReceivableSchedule& schedule, double default_prob,
                    const RateSet& rates) {
    if (schedule.empty()) {
        throw std::invalid_argument("schedule is empty");
    }
    check_probability(default_prob, "default probability");
    check_rates(rates);

    const double survive = 1.0 - default_prob;
    const double discount = 1.0 + rates.base_rate + rates.spread;
    double value = 0.0;
    for (const auto& inst : schedule.installments()) {
        value += std::pow(survive, inst.period) * inst.amount /
                 std::pow(discount, inst.period);
    }
    return value;
}

double guarantor_gain(double collateral, double default_estimate,
                      double extra_spread, double base_rate, int n_periods) {
    if (n_periods < 1) {
        throw std::invalid_argument("n_periods must be >= 1");
    }
    if (!(collateral >= 0.0) || !std::isfinite(collateral)) {
        throw std::invalid_argument("collateral must be non-negative");
    }
    if (!(default_estimate >= 0.0 && default_estimate < 1.0)) {
        throw std::invalid_argument("guarantor default estimate outside [0, 1)");
    }
    if (extra_spread < 0.0 || base_rate < 0.0) {
        throw std::invalid_argument("rates must be non-negative");
    }
    const double survive = 1.0 - default_estimate;
    return collateral * std::pow(1.0 + base_rate + extra_spread, n_periods) /
               std::pow(survive, n_periods) -
           collateral * std::pow(1.0 + base_rate, n_periods);
}

GuarantorTerms make_guarantor_terms(double collateral, double default_estimate,
                                    double extra_spread, double base_rate,
                                    int n_periods) {
    GuarantorTerms terms;
    terms.collateral = collateral;
    terms.default_estimate = default_estimate;
    terms.extra_spread = extra_spread;
    terms.asked_gain =
        guarantor_gain(collateral, default_estimate, extra_spread, base_rate, n_periods);
    return terms;
}

double anticipation_with_guarantor(const ReceivableSchedule& schedule,
                                   double default_prob, const RateSet& rates,
                                   const GuarantorTerms& terms) {
    if (schedule.empty()) {
        throw std::invalid_argument("schedule is empty");
    }
    check_probability(default_prob, "default probability");
    check_rates(rates);
    if (!(terms.collateral >= 0.0)) {
        throw std::invalid_argument("collateral must be non-negative");
    }

    const double survive = 1.0 - default_prob;
    const double discount = 1.0 + rates.base_rate + rates.spread;
    const int last = schedule.last_period();

    // Installments, with the asked gain charged against the last one.
    double value = 0.0;
    for (const auto& inst : schedule.installments()) {
        const double flow =
            inst.amount - (inst.period == last ? terms.asked_gain : 0.0);
        value += std::pow(survive, inst.period) * flow / std::pow(discount, inst.period);
    }
    // Collateral retained on default; default is a per-period process, so the
    // retention term runs over every period up to the last installment.
    for (int j = 1; j <= last; ++j) {
        value += std::pow(survive, j - 1) * default_prob * terms.collateral *
                 std::pow(1.0 + rates.base_rate, j) / std::pow(discount, j);
    }
    return value;
}

OfferChoice select_offer(double plain_value, std::optional<double> guaranteed_value,
                         double improvement_threshold, bool refused) {
    if (improvement_threshold < 0.0) {
        throw std::invalid_argument("improvement threshold must be non-negative");
    }
    if (refused) {
        return OfferChoice::none;
    }
    OfferChoice choice = OfferChoice::plain;
    double chosen = plain_value;
    if (guaranteed_value &&
        *guaranteed_value >= (1.0 + improvement_threshold) * plain_value) {
        choice = OfferChoice::guaranteed;
        chosen = *guaranteed_value;
    }
    if (chosen <= 0.0) {
        return OfferChoice::none;
    }
    return choice;
}

}  // namespace lendsim
