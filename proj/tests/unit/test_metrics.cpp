#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lendsim/metrics.hpp"

using namespace lendsim;

TEST_CASE("one-period returns") {
    CHECK_THROWS_AS(one_period_return({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(one_period_return({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(one_period_return({1.0, -2.0}), std::invalid_argument);

    const auto constant = one_period_return({3.0, 3.0, 3.0, 3.0});
    CHECK(!is_defined(constant[0]));
    for (std::size_t t = 1; t < constant.size(); ++t) {
        CHECK(constant[t] == doctest::Approx(0.0));
    }

    std::vector<double> geometric{1.0};
    for (int i = 0; i < 10; ++i) geometric.push_back(geometric.back() * 1.02);
    for (std::size_t t = 1; t < geometric.size(); ++t) {
        CHECK(one_period_return(geometric)[t] == doctest::Approx(0.02));
    }
}

TEST_CASE("trailing annualized returns") {
    std::vector<double> series{1.0};
    const double x = 0.0079741404289038;
    for (int i = 0; i < 36; ++i) series.push_back(series.back() * (1.0 + x));

    // Annualization identity: independent of the window length.
    const double annual = std::pow(1.0 + x, 12) - 1.0;
    for (int window : {1, 6, 18, 24}) {
        const auto trailing = trailing_annualized_return(series, window, 12);
        for (std::size_t t = 0; t < trailing.size(); ++t) {
            if (static_cast<int>(t) < window) {
                CHECK(!is_defined(trailing[t]));
            } else {
                CHECK(trailing[t] == doctest::Approx(annual).epsilon(1e-10));
            }
        }
    }

    // A window one short of the series yields a single defined value.
    const auto single =
        trailing_annualized_return(series, static_cast<int>(series.size()) - 1, 12);
    int defined = 0;
    for (double v : single) defined += is_defined(v) ? 1 : 0;
    CHECK(defined == 1);

    // A window longer than the series is all absent, not an error.
    const auto absent =
        trailing_annualized_return(series, static_cast<int>(series.size()) + 5, 12);
    for (double v : absent) CHECK(!is_defined(v));

    CHECK_THROWS_AS(trailing_annualized_return(series, 0, 12), std::invalid_argument);
}

TEST_CASE("allocation ratio stays in the unit interval") {
    RunResult r;
    r.total_assets = {100.0, 110.0, 120.0};
    r.cash = {100.0, 44.0, 0.5};
    const auto ratio = allocation_ratio(r);
    CHECK(ratio[0] == doctest::Approx(0.0));
    CHECK(ratio[1] == doctest::Approx(0.6));
    CHECK(ratio[2] == doctest::Approx(119.5 / 120.0));
    for (double v : ratio) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    RunResult bad;
    bad.total_assets = {0.0};
    bad.cash = {0.0};
    CHECK_THROWS_AS(allocation_ratio(bad), std::invalid_argument);
}

TEST_CASE("ensemble stats match the boxplot conventions") {
    // Singleton ensembles collapse to the series itself.
    const auto single = ensemble_stats({{1.5, 2.5}});
    CHECK(single.mean[0] == doctest::Approx(1.5));
    CHECK(single.min[1] == doctest::Approx(2.5));
    CHECK(single.q1[0] == doctest::Approx(1.5));
    CHECK(single.q3[1] == doctest::Approx(2.5));

    // {1,2,3,4,5}: median 3, halves {1,2} and {4,5}.
    const auto five = ensemble_stats({{1.0}, {4.0}, {2.0}, {5.0}, {3.0}});
    CHECK(five.min[0] == doctest::Approx(1.0));
    CHECK(five.q1[0] == doctest::Approx(1.5));
    CHECK(five.median[0] == doctest::Approx(3.0));
    CHECK(five.q3[0] == doctest::Approx(4.5));
    CHECK(five.max[0] == doctest::Approx(5.0));
    CHECK(five.mean[0] == doctest::Approx(3.0));

    CHECK_THROWS_AS(ensemble_stats({}), std::invalid_argument);
    CHECK_THROWS_AS(ensemble_stats({{1.0, 2.0}, {1.0}}), std::invalid_argument);
}

TEST_CASE("ensemble stats keep their ordering at every period") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    std::vector<std::vector<double>> ensemble;
    for (int series = 0; series < 17; ++series) {
        std::vector<double> values;
        for (int t = 0; t < 23; ++t) values.push_back(unit(rng));
        ensemble.push_back(std::move(values));
    }
    const auto stats = ensemble_stats(ensemble);
    for (std::size_t t = 0; t < stats.median.size(); ++t) {
        CHECK(stats.min[t] <= stats.q1[t]);
        CHECK(stats.q1[t] <= stats.median[t]);
        CHECK(stats.median[t] <= stats.q3[t]);
        CHECK(stats.q3[t] <= stats.max[t]);
        CHECK(stats.mean[t] >= stats.min[t]);
        CHECK(stats.mean[t] <= stats.max[t]);
    }
}

TEST_CASE("undefined entries are skipped, not treated as zero") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto stats = ensemble_stats({{nan, 2.0}, {nan, 4.0}});
    CHECK(!is_defined(stats.mean[0]));
    CHECK(stats.mean[1] == doctest::Approx(3.0));
}
