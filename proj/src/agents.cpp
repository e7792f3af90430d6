#include "lendsim/agents.hpp"

#include <stdexcept>

namespace lendsim {

std::vector<Borrower> create_borrowers(const ScenarioConfig& config, int count,
                                       int period, int& next_id,
                                       std::mt19937_64& spawn_rng,
                                       const StreamFactory& streams) {
    std::vector<Borrower> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Borrower b;
        b.spec.id = next_id++;
        b.spec.p_true = config.default_probability.sample(spawn_rng);
        b.spec.schedule_total = config.borrowers.schedule_total.sample(spawn_rng);
        b.spec.n_installments = config.borrowers.installments.sample(spawn_rng);
        // Always consume the flag draw so populations stay aligned across
        // configs that differ only in guarantor frequency.
        const double flag = uniform01(spawn_rng);
        b.spec.has_guarantor = flag < config.guarantors.frequency;
        b.next_request_period = period;
        const auto id = static_cast<std::uint64_t>(b.spec.id);
        b.rating_rng = streams.stream(stream_purpose::borrower_rating, id);
        b.accept_rng = streams.stream(stream_purpose::borrower_accept, id);
        b.payment_rng = streams.stream(stream_purpose::borrower_payment, id);
        b.guarantor_rng = streams.stream(stream_purpose::borrower_guarantor, id);
        if (b.spec.has_guarantor) {
            GuarantorSpec g;
            g.id = b.spec.id;
            g.collateral = config.guarantors.collateral.sample(b.guarantor_rng);
            const double annual_sg =
                config.guarantors.annual_extra_spread.sample(b.guarantor_rng);
            g.extra_spread = config.per_period_rate(annual_sg);
            g.rating = config.guarantors.rating;
            b.guarantor = g;
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Borrower> spawn_borrowers(const ScenarioConfig& config, int period,
                                      int live_count, int& next_id,
                                      std::mt19937_64& spawn_rng,
                                      const StreamFactory& streams) {
    int count = 0;
    switch (config.borrowers.mode) {
        case BorrowerMode::constant:
            count = std::max(0, config.borrowers.population - live_count);
            break;
        case BorrowerMode::recurring:
            count = period <= 1 ? std::max(0, config.borrowers.population - live_count)
                                : 0;
            break;
        case BorrowerMode::arrivals:
            count = config.borrowers.arrivals_per_period;
            break;
    }
    return create_borrowers(config, count, period, next_id, spawn_rng, streams);
}

std::optional<GuarantorTerms> guarantor_offer(const GuarantorSpec& guarantor,
                                              double borrower_p_true,
                                              double base_rate, int n_periods,
                                              std::mt19937_64& rating_rng) {
    const double p_g =
        estimate_default_prob(guarantor.rating, borrower_p_true, rating_rng);
    if (p_g >= 1.0) {
        return std::nullopt;
    }
    return make_guarantor_terms(guarantor.collateral, p_g, guarantor.extra_spread,
                                base_rate, n_periods);
}

bool investor_wants_entry(const InvestorSpec& inv,
                          std::optional<double> trailing_return, bool enter_blind) {
    if (!trailing_return) {
        return enter_blind;
    }
    return *trailing_return >= inv.expected_return;
}

InvestorAction investor_decision(const InvestorSpec& inv, int holding_age,
                                 std::optional<double> trailing_return,
                                 std::mt19937_64& rng) {
    if (holding_age < inv.min_holding) {
        return InvestorAction::hold;
    }
    const bool on_target = trailing_return && *trailing_return >= inv.expected_return;
    const double rate =
        on_target ? inv.profit_withdraw_rate : inv.loss_withdraw_rate;
    return uniform01(rng) < rate ? InvestorAction::withdraw : InvestorAction::hold;
}

}  // namespace lendsim
