#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lendsim/pricing.hpp"

namespace lendsim::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct OracleStats {
    double mean = 0.0;
    double std_error = 0.0;
};

// Monte Carlo payment oracle: replays the per-period default walk and sums
// realized receipts. Kept independent of the closed-form pricing code so the
// two can cross-check each other.
OracleStats payment_oracle(const ReceivableSchedule& schedule, double p_true,
                           int trials, std::uint64_t seed);

// Adds the guarantor flows: the accrued collateral is kept on default, the
// asked gain is paid out when the last installment arrives.
OracleStats payment_oracle_with_guarantor(const ReceivableSchedule& schedule,
                                          double p_true, double collateral,
                                          double asked_gain, double base_rate,
                                          int trials, std::uint64_t seed);

std::vector<std::string> check_names();
CheckResult run_check(const std::string& name);
std::vector<CheckResult> run_all();

}  // namespace lendsim::validation
