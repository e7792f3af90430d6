#include <doctest.h>

#include <cmath>
#include <random>

#include "lendsim/agents.hpp"
#include "lendsim/config.hpp"

using namespace lendsim;

namespace {

ScenarioConfig spawn_config() {
    ScenarioConfig c;
    c.borrowers.mode = BorrowerMode::constant;
    c.borrowers.population = 100;
    c.borrowers.schedule_total = ValueDist::uniform(50.0, 150.0);
    c.borrowers.installments = IntDist::uniform(2, 8);
    c.default_probability = DefaultProbModel::from_beta(2.0, 100.0);
    c.guarantors.frequency = 0.3;
    return c;
}

}  // namespace

TEST_CASE("constant-population spawning replaces terminated borrowers") {
    auto config = spawn_config();
    StreamFactory streams(42);
    auto rng = streams.stream(stream_purpose::spawn);
    int next_id = 0;
    const auto replacements =
        spawn_borrowers(config, 5, 93, next_id, rng, streams);
    CHECK(replacements.size() == 7);
    CHECK(next_id == 7);
    for (const auto& b : replacements) {
        CHECK(b.next_request_period == 5);
        CHECK(b.spec.p_true > 0.0);
        CHECK(b.spec.schedule_total >= 50.0);
        CHECK(b.spec.schedule_total <= 150.0);
        CHECK(b.spec.n_installments >= 2);
        CHECK(b.spec.n_installments <= 8);
    }
    // Already at full size: nothing to do.
    const auto none = spawn_borrowers(config, 6, 100, next_id, rng, streams);
    CHECK(none.empty());
}

TEST_CASE("recurring mode spawns the population once") {
    auto config = spawn_config();
    config.borrowers.mode = BorrowerMode::recurring;
    StreamFactory streams(43);
    auto rng = streams.stream(stream_purpose::spawn);
    int next_id = 0;
    CHECK(spawn_borrowers(config, 1, 0, next_id, rng, streams).size() == 100);
    CHECK(spawn_borrowers(config, 2, 100, next_id, rng, streams).empty());
    CHECK(spawn_borrowers(config, 3, 40, next_id, rng, streams).empty());
}

TEST_CASE("arrivals mode adds a fixed count every period") {
    auto config = spawn_config();
    config.borrowers.mode = BorrowerMode::arrivals;
    config.borrowers.arrivals_per_period = 4;
    StreamFactory streams(44);
    auto rng = streams.stream(stream_purpose::spawn);
    int next_id = 0;
    CHECK(spawn_borrowers(config, 1, 0, next_id, rng, streams).size() == 4);
    CHECK(spawn_borrowers(config, 2, 4, next_id, rng, streams).size() == 4);
}

TEST_CASE("guarantor frequency controls the flagged share") {
    auto config = spawn_config();
    StreamFactory streams(45);
    auto rng = streams.stream(stream_purpose::spawn);
    int next_id = 0;
    const int count = 10000;
    const auto borrowers =
        create_borrowers(config, count, 1, next_id, rng, streams);
    int flagged = 0;
    for (const auto& b : borrowers) {
        if (b.spec.has_guarantor) {
            ++flagged;
            REQUIRE(b.guarantor.has_value());
            CHECK(b.guarantor->collateral > 0.0);
        } else {
            CHECK(!b.guarantor.has_value());
        }
    }
    const double share = static_cast<double>(flagged) / count;
    const double se = std::sqrt(0.3 * 0.7 / count);
    CHECK(std::abs(share - 0.3) <= 3.0 * se);

    config.guarantors.frequency = 0.0;
    auto rng2 = streams.stream(stream_purpose::spawn);
    int id2 = 0;
    for (const auto& b : create_borrowers(config, 1000, 1, id2, rng2, streams)) {
        CHECK(!b.spec.has_guarantor);
    }
}

TEST_CASE("population draws are reproducible for a fixed seed") {
    auto config = spawn_config();
    auto make = [&](std::uint64_t seed) {
        StreamFactory streams(seed);
        auto rng = streams.stream(stream_purpose::spawn);
        int next_id = 0;
        return create_borrowers(config, 50, 1, next_id, rng, streams);
    };
    const auto a = make(7);
    const auto b = make(7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].spec.p_true == b[i].spec.p_true);
        CHECK(a[i].spec.schedule_total == b[i].spec.schedule_total);
        CHECK(a[i].spec.n_installments == b[i].spec.n_installments);
        CHECK(a[i].spec.has_guarantor == b[i].spec.has_guarantor);
    }
}

TEST_CASE("guarantor offers satisfy the indifference identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    GuarantorSpec perfect;
    perfect.collateral = 50.0;
    perfect.extra_spread = 0.02;
    perfect.rating = RatingModel{1.0, 0.0, 0.0, 0.99};
    const auto terms = guarantor_offer(perfect, 0.05, 0.0, 3, rng);
    REQUIRE(terms.has_value());
    CHECK(terms->asked_gain == doctest::Approx(11.887039).epsilon(1e-6));
    CHECK(terms->default_estimate == doctest::Approx(0.05));

    // An interest-free stake asks for nothing.
    GuarantorSpec free_stake = perfect;
    free_stake.extra_spread = 0.0;
    const auto free_terms = guarantor_offer(free_stake, 0.0, 0.0, 4, rng);
    REQUIRE(free_terms.has_value());
    CHECK(free_terms->asked_gain == doctest::Approx(0.0));

    for (int i = 0; i < 200; ++i) {
        GuarantorSpec g;
        g.collateral = 1.0 + 99.0 * unit(rng);
        g.extra_spread = 0.1 * unit(rng);
        g.rating = RatingModel{1.0, 0.0, 0.0, 0.99};
        const double p_true = 0.6 * unit(rng);
        const double r = 0.15 * unit(rng);
        const int n = 1 + static_cast<int>(unit(rng) * 11);
        const auto t = guarantor_offer(g, p_true, r, n, rng);
        REQUIRE(t.has_value());
        const double lhs = std::pow(1.0 - t->default_estimate, n) *
                           (g.collateral * std::pow(1.0 + r, n) + t->asked_gain);
        const double rhs = g.collateral * std::pow(1.0 + r + g.extra_spread, n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("investor entry follows the trailing return rule") {
    InvestorSpec inv;
    inv.expected_return = 0.08;
    CHECK(investor_wants_entry(inv, std::nullopt, true));
    CHECK(!investor_wants_entry(inv, std::nullopt, false));
    CHECK(investor_wants_entry(inv, 0.08, false));
    CHECK(investor_wants_entry(inv, 0.12, false));
    CHECK(!investor_wants_entry(inv, 0.05, false));
}

TEST_CASE("investor holding and withdrawal rules") {
    std::mt19937_64 rng(13);
    InvestorSpec inv;
    inv.expected_return = 0.08;
    inv.min_holding = 3;
    inv.profit_withdraw_rate = 0.0;
    inv.loss_withdraw_rate = 1.0;

    // Inside the minimum holding period nothing moves, whatever the returns.
    for (int age = 0; age < 3; ++age) {
        CHECK(investor_decision(inv, age, -0.5, rng) == InvestorAction::hold);
    }
    // Certain withdrawal on a miss once the holding period has elapsed.
    CHECK(investor_decision(inv, 3, 0.02, rng) == InvestorAction::withdraw);
    // Undefined history takes the loss branch.
    CHECK(investor_decision(inv, 3, std::nullopt, rng) == InvestorAction::withdraw);
    // Profit branch with zero profit-withdraw rate always holds.
    CHECK(investor_decision(inv, 3, 0.12, rng) == InvestorAction::hold);

    // Withdrawal frequency tracks the configured rate.
    inv.profit_withdraw_rate = 0.25;
    int withdrew = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        if (investor_decision(inv, 5, 0.12, rng) == InvestorAction::withdraw) {
            ++withdrew;
        }
    }
    const double share = static_cast<double>(withdrew) / draws;
    CHECK(std::abs(share - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / draws));
}
