#pragma once

#include <optional>
#include <vector>

namespace lendsim {

// One future receivable: an amount due `period` steps from the anticipation
// date. Period indices are 1-based and need not be consecutive.
struct Installment {
    int period = 0;
    double amount = 0.0;
};

// The installment stream a borrower offers for anticipation.
class ReceivableSchedule {
public:
    ReceivableSchedule() = default;
    explicit ReceivableSchedule(std::vector<Installment> installments);

    static ReceivableSchedule equal_installments(double total, int count);

    const std::vector<Installment>& installments() const { return installments_; }
    bool empty() const { return installments_.empty(); }
    std::size_t size() const { return installments_.size(); }
    // Last period index; the N of the guarantor formulas.
    int last_period() const;
    double total() const;

private:
    std::vector<Installment> installments_;
};

// Per-period base rate r and platform spread s, as decimals.
struct RateSet {
    double base_rate = 0.0;
    double spread = 0.0;
};

// Collateral stake plus the gain that makes the guarantor whole at its own
// risk estimate.
struct GuarantorTerms {
    double collateral = 0.0;        // V_c
    double default_estimate = 0.0;  // p_g
    double extra_spread = 0.0;      // s_g, per period
    double asked_gain = 0.0;        // G_s
};

enum class OfferChoice { plain, guaranteed, none };

// Anticipation offer without guarantor: survival-weighted installments
// discounted at (1 + r + s) per period.
double anticipation(const ReceivableSchedule& schedule, double default_prob,
                    const RateSet& rates);

// Gain that leaves a guarantor indifferent between staking and earning its
// own spread: V_c (1+r+s_g)^N / (1-p_g)^N - V_c (1+r)^N.
double guarantor_gain(double collateral, double default_estimate,
                      double extra_spread, double base_rate, int n_periods);

GuarantorTerms make_guarantor_terms(double collateral, double default_estimate,
                                    double extra_spread, double base_rate,
                                    int n_periods);

// Anticipation offer including the guarantor cash flows: the asked gain is
// charged against the last installment, the collateral (accrued at r) is
// retained on default.
double anticipation_with_guarantor(const ReceivableSchedule& schedule,
                                   double default_prob, const RateSet& rates,
                                   const GuarantorTerms& terms);

// Offer selection: guaranteed iff it improves the plain offer by at least
// `improvement_threshold` (inclusive). `refused` marks borrowers the platform
// declines outright (estimate above the refusal cap).
OfferChoice select_offer(double plain_value, std::optional<double> guaranteed_value,
                         double improvement_threshold, bool refused = false);

}  // namespace lendsim
