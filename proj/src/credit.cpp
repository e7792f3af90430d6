#include "lendsim/credit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lendsim/rng.hpp"

namespace lendsim {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability outside [0, 1]");
    }
}

void check_model(const RatingModel& model) {
    if (!std::isfinite(model.slope) || !std::isfinite(model.intercept)) {
        throw std::invalid_argument("rating model coefficients must be finite");
    }
    if (model.noise_sd < 0.0) {
        throw std::invalid_argument("rating noise_sd must be non-negative");
    }
    if (!(model.p_max > 0.0 && model.p_max < 1.0)) {
        throw std::invalid_argument("rating p_max must lie in (0, 1)");
    }
}

}  // namespace

double survival_prob(double p, int period) {
    check_probability(p);
    if (period < 1) {
        throw std::invalid_argument("period index must be >= 1");
    }
    return std::pow(1.0 - p, period);
}

double default_pmf(double p, int period) {
    check_probability(p);
    if (period < 1) {
        throw std::invalid_argument("period index must be >= 1");
    }
    return std::pow(1.0 - p, period - 1) * p;
}

double sample_true_default_prob(const DefaultPopulation& pop, std::mt19937_64& rng) {
    if (!(pop.beta_a > 0.0) || !(pop.beta_b > 0.0)) {
        throw std::invalid_argument("Beta shapes must be positive");
    }
    std::gamma_distribution<double> ga(pop.beta_a, 1.0);
    std::gamma_distribution<double> gb(pop.beta_b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
}

double estimate_default_prob(const RatingModel& model, double p_true,
                             std::mt19937_64& rng) {
    check_model(model);
    check_probability(p_true);
    double estimate = model.slope * p_true + model.intercept;
    if (model.noise_sd > 0.0) {
        estimate += std::normal_distribution<double>(0.0, model.noise_sd)(rng);
    }
    return std::clamp(estimate, 0.0, model.p_max);
}

PaymentOutcome sample_payment_outcome(double p_true, int n_periods,
                                      std::mt19937_64& rng) {
    check_probability(p_true);
    if (n_periods < 1) {
        throw std::invalid_argument("n_periods must be >= 1");
    }
    for (int period = 1; period <= n_periods; ++period) {
        if (uniform01(rng) < p_true) {
            return PaymentOutcome{period};
        }
    }
    return PaymentOutcome{};
}

}  // namespace lendsim
