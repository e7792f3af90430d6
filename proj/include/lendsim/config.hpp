#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lendsim/credit.hpp"

namespace lendsim {

// Config validation failure carrying the offending fields.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::vector<std::string> fields)
        : std::runtime_error(message), fields_(std::move(fields)) {}

    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

// Sampling spec for a scalar scenario parameter.
struct ValueDist {
    enum class Kind { fixed, uniform };
    Kind kind = Kind::fixed;
    double value = 0.0;
    double low = 0.0;
    double high = 0.0;

    static ValueDist fixed(double v) { return {Kind::fixed, v, 0.0, 0.0}; }
    static ValueDist uniform(double lo, double hi) { return {Kind::uniform, 0.0, lo, hi}; }
    double sample(std::mt19937_64& rng) const;
};

struct IntDist {
    enum class Kind { fixed, uniform };
    Kind kind = Kind::fixed;
    int value = 1;
    int low = 1;
    int high = 1;

    static IntDist fixed(int v) { return {Kind::fixed, v, 0, 0}; }
    static IntDist uniform(int lo, int hi) { return {Kind::uniform, 0, lo, hi}; }
    int sample(std::mt19937_64& rng) const;
};

// True default probabilities: a Beta population, or a fixed value for the
// no-default validation scenarios.
struct DefaultProbModel {
    enum class Kind { beta, fixed };
    Kind kind = Kind::beta;
    DefaultPopulation beta;
    double fixed_value = 0.0;

    static DefaultProbModel from_beta(double a, double b) {
        DefaultProbModel m;
        m.kind = Kind::beta;
        m.beta = {a, b};
        return m;
    }
    static DefaultProbModel from_fixed(double p) {
        DefaultProbModel m;
        m.kind = Kind::fixed;
        m.fixed_value = p;
        return m;
    }
    double sample(std::mt19937_64& rng) const;
};

enum class BorrowerMode { constant, recurring, arrivals };
enum class GuarantorPolicy { threshold, forced };

struct BorrowerSettings {
    BorrowerMode mode = BorrowerMode::constant;
    int population = 0;           // constant / recurring modes
    int arrivals_per_period = 0;  // arrivals mode
    ValueDist schedule_total = ValueDist::fixed(1.0);
    IntDist installments = IntDist::fixed(6);
};

struct GuarantorSettings {
    double frequency = 0.0;
    ValueDist collateral = ValueDist::fixed(0.5);
    ValueDist annual_extra_spread = ValueDist::fixed(0.02);
    RatingModel rating;
    GuarantorPolicy policy = GuarantorPolicy::threshold;
};

struct InvestorSettings {
    int arrivals_per_period = 0;
    ValueDist amount = ValueDist::fixed(10.0);
    ValueDist annual_expected_return = ValueDist::fixed(0.10);
    IntDist eval_window = IntDist::fixed(6);
    ValueDist profit_withdraw_rate = ValueDist::fixed(0.1);
    ValueDist loss_withdraw_rate = ValueDist::fixed(0.5);
    IntDist min_holding = IntDist::fixed(3);
    bool enter_blind = true;
};

struct SeedInvestorSettings {
    double amount = 100.0;
    bool permanent = true;
};

struct DemandSettings {
    double steepness = -30.0;              // phi, must be negative
    double annual_reference_spread = 0.0;  // s0, annualized
};

// The full stochastic environment for one scenario. Rates are annualized in
// the document and converted to per-period values with a compound root.
struct ScenarioConfig {
    int horizon = 36;
    int periods_per_year = 12;
    double annual_base_rate = 0.10;
    double annual_spread = 0.10;
    DemandSettings demand;
    DefaultProbModel default_probability;
    RatingModel rating;
    BorrowerSettings borrowers;
    GuarantorSettings guarantors;
    InvestorSettings investors;
    SeedInvestorSettings seed_investor;
    double improvement_threshold = 0.10;
    double p_refuse = 0.5;
    int metric_window = 18;

    double per_period_rate(double annual) const;
    double per_period_base_rate() const { return per_period_rate(annual_base_rate); }
    double per_period_spread() const { return per_period_rate(annual_spread); }
    double per_period_reference_spread() const {
        return per_period_rate(demand.annual_reference_spread);
    }
    double annualize(double per_period) const;
};

// Throws ConfigError listing every offending field.
void validate_config(const ScenarioConfig& config);

// Strict JSON codec: unknown keys are rejected.
ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& config, int indent = 2);
ScenarioConfig load_config(const std::string& path);

}  // namespace lendsim
