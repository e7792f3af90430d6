#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lendsim/credit.hpp"

using namespace lendsim;

TEST_CASE("geometric survival and pmf match the closed forms") {
    CHECK(survival_prob(0.0, 5) == doctest::Approx(1.0));
    CHECK(default_pmf(0.1, 2) == doctest::Approx(0.09));
    CHECK(survival_prob(0.1, 2) == doctest::Approx(0.81));

    // Brute-force enumeration over two periods: default at 2 means surviving
    // period 1 then failing.
    const double p = 0.1;
    CHECK(default_pmf(p, 2) == doctest::Approx((1.0 - p) * p).epsilon(1e-15));

    // Total probability over N periods plus survival is one.
    double total = survival_prob(0.3, 5);
    for (int i = 1; i <= 5; ++i) total += default_pmf(0.3, i);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(survival_prob(0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(default_pmf(1.5, 1), std::invalid_argument);
}

TEST_CASE("Beta population sampling matches the analytic mean") {
    const int draws = 100000;
    auto sample_mean = [&](double a, double b, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        DefaultPopulation pop{a, b};
        double sum = 0.0;
        for (int i = 0; i < draws; ++i) sum += sample_true_default_prob(pop, rng);
        return sum / draws;
    };
    auto beta_se = [&](double a, double b) {
        const double mean = a / (a + b);
        const double variance = a * b / ((a + b) * (a + b) * (a + b + 1.0));
        return std::sqrt(variance / draws) + 1e-12;
        (void)mean;
    };

    CHECK(std::abs(sample_mean(2.0, 400.0, 31) - 2.0 / 402.0) <=
          3.0 * beta_se(2.0, 400.0));
    CHECK(std::abs(sample_mean(2.0, 80.0, 32) - 2.0 / 82.0) <=
          3.0 * beta_se(2.0, 80.0));

    CHECK_THROWS_AS(
        [] {
            std::mt19937_64 rng(1);
            return sample_true_default_prob(DefaultPopulation{0.0, 10.0}, rng);
        }(),
        std::invalid_argument);
}

TEST_CASE("wider Beta populations produce wider default draws") {
    const int draws = 100000;
    auto sample_variance = [&](double b, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        DefaultPopulation pop{2.0, b};
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double x = sample_true_default_prob(pop, rng);
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / draws;
        return sum_sq / draws - mean * mean;
    };
    CHECK(sample_variance(150.0, 33) > sample_variance(400.0, 34));
}

TEST_CASE("linear rating model with clamping") {
    std::mt19937_64 rng(5);
    CHECK(estimate_default_prob(RatingModel{1.0, 0.0, 0.0, 0.99}, 0.15, rng) ==
          doctest::Approx(0.15));
    CHECK(estimate_default_prob(RatingModel{0.8, 0.0, 0.0, 0.99}, 0.15, rng) ==
          doctest::Approx(0.12));
    CHECK(estimate_default_prob(RatingModel{1.0, -0.05, 0.0, 0.99}, 0.02, rng) ==
          doctest::Approx(0.0));
    CHECK(estimate_default_prob(RatingModel{2.0, 0.5, 0.0, 0.99}, 0.9, rng) ==
          doctest::Approx(0.99));

    // The clamp keeps noisy estimates inside [0, p_max].
    RatingModel noisy{1.0, 0.0, 0.5, 0.8};
    for (int i = 0; i < 1000; ++i) {
        const double estimate = estimate_default_prob(noisy, 0.5, rng);
        CHECK(estimate >= 0.0);
        CHECK(estimate <= 0.8);
    }
    CHECK_THROWS_AS(estimate_default_prob(RatingModel{1.0, 0.0, -1.0, 0.99}, 0.1, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_default_prob(RatingModel{1.0, 0.0, 0.0, 1.0}, 0.1, rng),
                    std::invalid_argument);
}

TEST_CASE("payment outcomes follow the geometric default process") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_payment_outcome(0.0, 5, rng).fully_paid());
        const auto outcome = sample_payment_outcome(1.0, 5, rng);
        REQUIRE(outcome.default_period.has_value());
        CHECK(*outcome.default_period == 1);
    }

    // Frequencies over many draws match the pmf and survival function.
    const int draws = 100000;
    const double p = 0.1;
    const int n = 3;
    std::vector<int> default_counts(n + 1, 0);
    int paid = 0;
    for (int i = 0; i < draws; ++i) {
        const auto outcome = sample_payment_outcome(p, n, rng);
        if (outcome.fully_paid()) {
            ++paid;
        } else {
            ++default_counts[static_cast<std::size_t>(*outcome.default_period)];
        }
    }
    const double p_paid = survival_prob(p, n);  // 0.729
    const double se_paid = std::sqrt(p_paid * (1.0 - p_paid) / draws);
    CHECK(std::abs(static_cast<double>(paid) / draws - p_paid) <= 3.0 * se_paid);
    for (int i = 1; i <= n; ++i) {
        const double expected = default_pmf(p, i);
        const double se = std::sqrt(expected * (1.0 - expected) / draws);
        CHECK(std::abs(static_cast<double>(default_counts[static_cast<std::size_t>(i)]) /
                           draws -
                       expected) <= 4.0 * se);
    }
}

TEST_CASE("expected honored payment per installment is (1-p)^i R_i") {
    std::mt19937_64 rng(8);
    const double p = 0.15;
    const int n = 4;
    const double installment = 25.0;
    const int draws = 200000;
    std::vector<double> honored(n + 1, 0.0);
    for (int d = 0; d < draws; ++d) {
        const auto outcome = sample_payment_outcome(p, n, rng);
        const int stop = outcome.fully_paid() ? n + 1 : *outcome.default_period;
        for (int i = 1; i < stop; ++i) honored[static_cast<std::size_t>(i)] += installment;
    }
    for (int i = 1; i <= n; ++i) {
        const double mean = honored[static_cast<std::size_t>(i)] / draws;
        const double expected = survival_prob(p, i) * installment;
        const double prob = survival_prob(p, i);
        const double se = installment * std::sqrt(prob * (1.0 - prob) / draws);
        CHECK(std::abs(mean - expected) <= 4.0 * se);
    }
}
