#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lendsim/demand.hpp"
#include "lendsim/pricing.hpp"

using namespace lendsim;

TEST_CASE("acceptance probability at the reference offer is one half") {
    for (double phi : {-1.0, -10.0, -100.0}) {
        const auto curve = make_demand_curve(phi, 0.02);
        CHECK(acceptance_probability(curve, 80.0, 80.0) == doctest::Approx(0.5));
    }
}

TEST_CASE("acceptance probability matches the logistic closed form") {
    const auto curve = make_demand_curve(-10.0, 0.0);
    // phi (A - A0)/A0 = -10 (-0.2) = 2 -> 1/(1+e^2)
    CHECK(acceptance_probability(curve, 80.0, 100.0) ==
          doctest::Approx(1.0 / (1.0 + std::exp(2.0))).epsilon(1e-12));
    CHECK(acceptance_probability(curve, 120.0, 100.0) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-12));
    CHECK(acceptance_probability(curve, 80.0, 100.0) == doctest::Approx(0.1192029220));
    CHECK(acceptance_probability(curve, 120.0, 100.0) == doctest::Approx(0.8807970780));
}

TEST_CASE("acceptance is symmetric around the reference offer") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto curve = make_demand_curve(-1.0 - 50.0 * unit(rng), 0.01);
        const double reference = 10.0 + 190.0 * unit(rng);
        const double displacement = reference * 0.5 * unit(rng);
        const double up = acceptance_probability(curve, reference + displacement, reference);
        const double down =
            acceptance_probability(curve, reference - displacement, reference);
        CHECK(up + down == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(up > 0.0);
        CHECK(up < 1.0);
        CHECK(down > 0.0);
        CHECK(down < 1.0);
    }
}

TEST_CASE("better offers are never less acceptable") {
    const auto curve = make_demand_curve(-25.0, 0.015);
    const auto schedule = ReceivableSchedule::equal_installments(100.0, 6);
    const double reference = reference_anticipation(schedule, 0.05, 0.008, curve);
    double previous = 0.0;
    // Lowering the spread raises the offer, which raises acceptance.
    for (double s : {0.05, 0.04, 0.03, 0.02, 0.01, 0.0}) {
        const double offer = anticipation(schedule, 0.05, RateSet{0.008, s});
        const double probability = acceptance_probability(curve, offer, reference);
        CHECK(probability >= previous);
        previous = probability;
    }
}

TEST_CASE("acceptance depends only on the offered value") {
    const auto curve = make_demand_curve(-30.0, 0.01);
    // Equal values quoted through different routes are indistinguishable.
    CHECK(acceptance_probability(curve, 84.2, 90.0) ==
          acceptance_probability(curve, 84.2, 90.0));
}

TEST_CASE("demand validation") {
    CHECK_THROWS_AS(make_demand_curve(0.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(make_demand_curve(5.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(make_demand_curve(-5.0, -0.01), std::invalid_argument);
    const auto curve = make_demand_curve(-5.0, 0.01);
    CHECK_THROWS_AS(acceptance_probability(curve, 50.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(acceptance_probability(curve, 50.0, -1.0), std::invalid_argument);
}

TEST_CASE("reference anticipation is the plain offer at the reference spread") {
    const auto schedule = ReceivableSchedule::equal_installments(100.0, 3);
    const auto curve = make_demand_curve(-10.0, 0.0);
    CHECK(reference_anticipation(schedule, 0.1, 0.0, curve) ==
          doctest::Approx(81.3).epsilon(1e-12));

    const auto live_curve = make_demand_curve(-10.0, 0.027);
    CHECK(reference_anticipation(schedule, 0.08, 0.01, live_curve) ==
          doctest::Approx(anticipation(schedule, 0.08, RateSet{0.01, 0.027})));

    // The reference offer shrinks as the installment count grows.
    double previous = 1e9;
    for (int n = 1; n <= 12; ++n) {
        const auto split = ReceivableSchedule::equal_installments(100.0, n);
        const double reference = reference_anticipation(split, 0.05, 0.01, live_curve);
        CHECK(reference < previous);
        previous = reference;
    }
}
