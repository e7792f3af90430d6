#pragma once

#include <optional>
#include <random>

namespace lendsim {

// Beta-distributed population of true per-period default probabilities.
struct DefaultPopulation {
    double beta_a = 2.0;
    double beta_b = 400.0;

    double mean() const { return beta_a / (beta_a + beta_b); }
};

// Linear rating engine: estimate = clamp(slope * p_true + intercept + noise,
// 0, p_max). slope = 1, intercept = 0, noise_sd = 0 is a perfect engine.
struct RatingModel {
    double slope = 1.0;
    double intercept = 0.0;
    double noise_sd = 0.0;
    double p_max = 0.99;
};

// Realized payment fate of one contract. default_period absent means fully
// paid; when present, every installment at or after it goes unpaid.
struct PaymentOutcome {
    std::optional<int> default_period;

    bool fully_paid() const { return !default_period.has_value(); }
};

// (1 - p)^i: probability of surviving through period i.
double survival_prob(double p, int period);

// (1 - p)^(i-1) p: probability of defaulting exactly at period i.
double default_pmf(double p, int period);

double sample_true_default_prob(const DefaultPopulation& pop, std::mt19937_64& rng);

double estimate_default_prob(const RatingModel& model, double p_true,
                             std::mt19937_64& rng);

// Walks periods 1..n_periods with constant hazard p_true; the first failed
// period (if any) becomes the default period.
PaymentOutcome sample_payment_outcome(double p_true, int n_periods,
                                      std::mt19937_64& rng);

}  // namespace lendsim
