#include "lendsim/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

namespace lendsim {

using nlohmann::json;

double ValueDist::sample(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::fixed:
            return value;
        case Kind::uniform:
            return std::uniform_real_distribution<double>(low, high)(rng);
    }
    return value;
}

int IntDist::sample(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::fixed:
            return value;
        case Kind::uniform:
            return std::uniform_int_distribution<int>(low, high)(rng);
    }
    return value;
}

double DefaultProbModel::sample(std::mt19937_64& rng) const {
    if (kind == Kind::fixed) {
        return fixed_value;
    }
    return sample_true_default_prob(beta, rng);
}

double ScenarioConfig::per_period_rate(double annual) const {
    return std::pow(1.0 + annual, 1.0 / periods_per_year) - 1.0;
}

double ScenarioConfig::annualize(double per_period) const {
    return std::pow(1.0 + per_period, periods_per_year) - 1.0;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError("config field '" + path + "': " + message, {path});
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> keys) {
    if (!j.is_object()) {
        fail(path.empty() ? "<root>" : path, "expected an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(join(path, it.key()), "unknown key");
        }
    }
}

double get_double(const json& j, const std::string& path, const char* key,
                  double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) fail(join(path, key), "expected a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) fail(join(path, key), "expected a boolean");
    return v.get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) fail(join(path, key), "expected a string");
    return v.get<std::string>();
}

ValueDist parse_value_dist(const json& j, const std::string& path, ValueDist fallback) {
    if (j.is_null()) return fallback;
    check_keys(j, path, {"type", "value", "low", "high"});
    const std::string type = get_string(j, path, "type", "fixed");
    if (type == "fixed") {
        return ValueDist::fixed(get_double(j, path, "value", fallback.value));
    }
    if (type == "uniform") {
        return ValueDist::uniform(get_double(j, path, "low", 0.0),
                                  get_double(j, path, "high", 0.0));
    }
    fail(join(path, "type"), "expected 'fixed' or 'uniform'");
}

IntDist parse_int_dist(const json& j, const std::string& path, IntDist fallback) {
    if (j.is_null()) return fallback;
    check_keys(j, path, {"type", "value", "low", "high"});
    const std::string type = get_string(j, path, "type", "fixed");
    if (type == "fixed") {
        return IntDist::fixed(get_int(j, path, "value", fallback.value));
    }
    if (type == "uniform") {
        return IntDist::uniform(get_int(j, path, "low", 1), get_int(j, path, "high", 1));
    }
    fail(join(path, "type"), "expected 'fixed' or 'uniform'");
}

RatingModel parse_rating(const json& j, const std::string& path, RatingModel fallback) {
    check_keys(j, path, {"slope", "intercept", "noise_sd", "p_max"});
    RatingModel model = fallback;
    model.slope = get_double(j, path, "slope", fallback.slope);
    model.intercept = get_double(j, path, "intercept", fallback.intercept);
    model.noise_sd = get_double(j, path, "noise_sd", fallback.noise_sd);
    model.p_max = get_double(j, path, "p_max", fallback.p_max);
    return model;
}

json dist_to_json(const ValueDist& d) {
    if (d.kind == ValueDist::Kind::fixed) {
        return json{{"type", "fixed"}, {"value", d.value}};
    }
    return json{{"type", "uniform"}, {"low", d.low}, {"high", d.high}};
}

json dist_to_json(const IntDist& d) {
    if (d.kind == IntDist::Kind::fixed) {
        return json{{"type", "fixed"}, {"value", d.value}};
    }
    return json{{"type", "uniform"}, {"low", d.low}, {"high", d.high}};
}

json rating_to_json(const RatingModel& m) {
    return json{{"slope", m.slope},
                {"intercept", m.intercept},
                {"noise_sd", m.noise_sd},
                {"p_max", m.p_max}};
}

void check_dist(const ValueDist& d, double min_allowed, const char* field,
                std::vector<std::string>& bad) {
    const bool ok = d.kind == ValueDist::Kind::fixed
                        ? std::isfinite(d.value) && d.value >= min_allowed
                        : std::isfinite(d.low) && std::isfinite(d.high) &&
                              d.low <= d.high && d.low >= min_allowed;
    if (!ok) bad.emplace_back(field);
}

void check_int_dist(const IntDist& d, int min_allowed, const char* field,
                    std::vector<std::string>& bad) {
    const bool ok = d.kind == IntDist::Kind::fixed
                        ? d.value >= min_allowed
                        : d.low <= d.high && d.low >= min_allowed;
    if (!ok) bad.emplace_back(field);
}

void check_rating(const RatingModel& m, const char* prefix,
                  std::vector<std::string>& bad) {
    if (!std::isfinite(m.slope)) bad.emplace_back(std::string(prefix) + ".slope");
    if (!std::isfinite(m.intercept)) bad.emplace_back(std::string(prefix) + ".intercept");
    if (!(m.noise_sd >= 0.0)) bad.emplace_back(std::string(prefix) + ".noise_sd");
    if (!(m.p_max > 0.0 && m.p_max < 1.0)) bad.emplace_back(std::string(prefix) + ".p_max");
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
    std::vector<std::string> bad;
    auto req = [&bad](bool ok, const char* field) {
        if (!ok) bad.emplace_back(field);
    };

    req(c.horizon >= 0, "horizon");
    req(c.periods_per_year >= 1, "periods_per_year");
    req(std::isfinite(c.annual_base_rate) && c.annual_base_rate >= 0.0,
        "annual_base_rate");
    req(std::isfinite(c.annual_spread) && c.annual_spread >= 0.0, "annual_spread");
    req(std::isfinite(c.demand.steepness) && c.demand.steepness < 0.0,
        "demand.steepness");
    req(c.demand.annual_reference_spread >= 0.0, "demand.annual_reference_spread");
    if (c.default_probability.kind == DefaultProbModel::Kind::beta) {
        const auto& b = c.default_probability.beta;
        req(b.beta_a > 0.0 && b.beta_b > 0.0 && b.mean() > 0.0 && b.mean() < 1.0,
            "default_probability.beta");
    } else {
        req(c.default_probability.fixed_value >= 0.0 &&
                c.default_probability.fixed_value <= 1.0,
            "default_probability.value");
    }
    check_rating(c.rating, "rating", bad);
    req(c.borrowers.population >= 0, "borrowers.population");
    req(c.borrowers.arrivals_per_period >= 0, "borrowers.arrivals_per_period");
    check_dist(c.borrowers.schedule_total, 1e-12, "borrowers.schedule_total", bad);
    check_int_dist(c.borrowers.installments, 1, "borrowers.installments", bad);
    req(c.guarantors.frequency >= 0.0 && c.guarantors.frequency <= 1.0,
        "guarantors.frequency");
    check_dist(c.guarantors.collateral, 0.0, "guarantors.collateral", bad);
    check_dist(c.guarantors.annual_extra_spread, 0.0,
               "guarantors.annual_extra_spread", bad);
    check_rating(c.guarantors.rating, "guarantors.rating", bad);
    req(c.investors.arrivals_per_period >= 0, "investors.arrivals_per_period");
    check_dist(c.investors.amount, 1e-12, "investors.amount", bad);
    check_dist(c.investors.annual_expected_return, -1.0,
               "investors.annual_expected_return", bad);
    check_int_dist(c.investors.eval_window, 1, "investors.eval_window", bad);
    check_dist(c.investors.profit_withdraw_rate, 0.0,
               "investors.profit_withdraw_rate", bad);
    check_dist(c.investors.loss_withdraw_rate, 0.0, "investors.loss_withdraw_rate", bad);
    check_int_dist(c.investors.min_holding, 0, "investors.min_holding", bad);
    req(c.seed_investor.amount > 0.0, "seed_investor.amount");
    req(c.improvement_threshold >= 0.0, "improvement_threshold");
    req(c.p_refuse >= 0.0 && c.p_refuse <= 1.0, "p_refuse");
    req(c.metric_window >= 1, "metric_window");

    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "invalid config field(s):";
        for (const auto& f : bad) msg << ' ' << f;
        throw ConfigError(msg.str(), bad);
    }
}

ScenarioConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what(), {});
    }
    check_keys(j, "",
               {"horizon", "periods_per_year", "annual_base_rate", "annual_spread",
                "demand", "default_probability", "rating", "borrowers", "guarantors",
                "investors", "seed_investor", "improvement_threshold", "p_refuse",
                "metric_window"});

    ScenarioConfig c;
    c.horizon = get_int(j, "", "horizon", c.horizon);
    c.periods_per_year = get_int(j, "", "periods_per_year", c.periods_per_year);
    c.annual_base_rate = get_double(j, "", "annual_base_rate", c.annual_base_rate);
    c.annual_spread = get_double(j, "", "annual_spread", c.annual_spread);

    if (j.contains("demand")) {
        const json& d = j.at("demand");
        check_keys(d, "demand", {"steepness", "annual_reference_spread"});
        c.demand.steepness = get_double(d, "demand", "steepness", c.demand.steepness);
        c.demand.annual_reference_spread = get_double(
            d, "demand", "annual_reference_spread", c.demand.annual_reference_spread);
    }
    if (j.contains("default_probability")) {
        const json& d = j.at("default_probability");
        check_keys(d, "default_probability", {"type", "beta_a", "beta_b", "value"});
        const std::string type = get_string(d, "default_probability", "type", "beta");
        if (type == "beta") {
            c.default_probability = DefaultProbModel::from_beta(
                get_double(d, "default_probability", "beta_a", 2.0),
                get_double(d, "default_probability", "beta_b", 400.0));
        } else if (type == "fixed") {
            c.default_probability = DefaultProbModel::from_fixed(
                get_double(d, "default_probability", "value", 0.0));
        } else {
            fail("default_probability.type", "expected 'beta' or 'fixed'");
        }
    }
    if (j.contains("rating")) {
        c.rating = parse_rating(j.at("rating"), "rating", c.rating);
    }
    if (j.contains("borrowers")) {
        const json& b = j.at("borrowers");
        check_keys(b, "borrowers",
                   {"mode", "population", "arrivals_per_period", "schedule_total",
                    "installments"});
        const std::string mode = get_string(b, "borrowers", "mode", "constant");
        if (mode == "constant") {
            c.borrowers.mode = BorrowerMode::constant;
        } else if (mode == "recurring") {
            c.borrowers.mode = BorrowerMode::recurring;
        } else if (mode == "arrivals") {
            c.borrowers.mode = BorrowerMode::arrivals;
        } else {
            fail("borrowers.mode", "expected 'constant', 'recurring' or 'arrivals'");
        }
        c.borrowers.population = get_int(b, "borrowers", "population", 0);
        c.borrowers.arrivals_per_period =
            get_int(b, "borrowers", "arrivals_per_period", 0);
        if (b.contains("schedule_total")) {
            c.borrowers.schedule_total = parse_value_dist(
                b.at("schedule_total"), "borrowers.schedule_total",
                c.borrowers.schedule_total);
        }
        if (b.contains("installments")) {
            c.borrowers.installments = parse_int_dist(
                b.at("installments"), "borrowers.installments", c.borrowers.installments);
        }
    }
    if (j.contains("guarantors")) {
        const json& g = j.at("guarantors");
        check_keys(g, "guarantors",
                   {"frequency", "collateral", "annual_extra_spread", "rating",
                    "policy"});
        c.guarantors.frequency = get_double(g, "guarantors", "frequency", 0.0);
        if (g.contains("collateral")) {
            c.guarantors.collateral = parse_value_dist(
                g.at("collateral"), "guarantors.collateral", c.guarantors.collateral);
        }
        if (g.contains("annual_extra_spread")) {
            c.guarantors.annual_extra_spread = parse_value_dist(
                g.at("annual_extra_spread"), "guarantors.annual_extra_spread",
                c.guarantors.annual_extra_spread);
        }
        if (g.contains("rating")) {
            c.guarantors.rating =
                parse_rating(g.at("rating"), "guarantors.rating", c.guarantors.rating);
        }
        const std::string policy = get_string(g, "guarantors", "policy", "threshold");
        if (policy == "threshold") {
            c.guarantors.policy = GuarantorPolicy::threshold;
        } else if (policy == "forced") {
            c.guarantors.policy = GuarantorPolicy::forced;
        } else {
            fail("guarantors.policy", "expected 'threshold' or 'forced'");
        }
    }
    if (j.contains("investors")) {
        const json& v = j.at("investors");
        check_keys(v, "investors",
                   {"arrivals_per_period", "amount", "annual_expected_return",
                    "eval_window", "profit_withdraw_rate", "loss_withdraw_rate",
                    "min_holding", "enter_blind"});
        c.investors.arrivals_per_period = get_int(v, "investors", "arrivals_per_period",
                                                  c.investors.arrivals_per_period);
        if (v.contains("amount")) {
            c.investors.amount =
                parse_value_dist(v.at("amount"), "investors.amount", c.investors.amount);
        }
        if (v.contains("annual_expected_return")) {
            c.investors.annual_expected_return = parse_value_dist(
                v.at("annual_expected_return"), "investors.annual_expected_return",
                c.investors.annual_expected_return);
        }
        if (v.contains("eval_window")) {
            c.investors.eval_window = parse_int_dist(
                v.at("eval_window"), "investors.eval_window", c.investors.eval_window);
        }
        if (v.contains("profit_withdraw_rate")) {
            c.investors.profit_withdraw_rate = parse_value_dist(
                v.at("profit_withdraw_rate"), "investors.profit_withdraw_rate",
                c.investors.profit_withdraw_rate);
        }
        if (v.contains("loss_withdraw_rate")) {
            c.investors.loss_withdraw_rate = parse_value_dist(
                v.at("loss_withdraw_rate"), "investors.loss_withdraw_rate",
                c.investors.loss_withdraw_rate);
        }
        if (v.contains("min_holding")) {
            c.investors.min_holding = parse_int_dist(
                v.at("min_holding"), "investors.min_holding", c.investors.min_holding);
        }
        c.investors.enter_blind =
            get_bool(v, "investors", "enter_blind", c.investors.enter_blind);
    }
    if (j.contains("seed_investor")) {
        const json& s = j.at("seed_investor");
        check_keys(s, "seed_investor", {"amount", "permanent"});
        c.seed_investor.amount =
            get_double(s, "seed_investor", "amount", c.seed_investor.amount);
        c.seed_investor.permanent =
            get_bool(s, "seed_investor", "permanent", c.seed_investor.permanent);
    }
    c.improvement_threshold =
        get_double(j, "", "improvement_threshold", c.improvement_threshold);
    c.p_refuse = get_double(j, "", "p_refuse", c.p_refuse);
    c.metric_window = get_int(j, "", "metric_window", c.metric_window);

    validate_config(c);
    return c;
}

std::string config_to_json_text(const ScenarioConfig& c, int indent) {
    json j;
    j["horizon"] = c.horizon;
    j["periods_per_year"] = c.periods_per_year;
    j["annual_base_rate"] = c.annual_base_rate;
    j["annual_spread"] = c.annual_spread;
    j["demand"] = json{{"steepness", c.demand.steepness},
                       {"annual_reference_spread", c.demand.annual_reference_spread}};
    if (c.default_probability.kind == DefaultProbModel::Kind::beta) {
        j["default_probability"] = json{{"type", "beta"},
                                        {"beta_a", c.default_probability.beta.beta_a},
                                        {"beta_b", c.default_probability.beta.beta_b}};
    } else {
        j["default_probability"] =
            json{{"type", "fixed"}, {"value", c.default_probability.fixed_value}};
    }
    j["rating"] = rating_to_json(c.rating);
    const char* mode = c.borrowers.mode == BorrowerMode::constant    ? "constant"
                       : c.borrowers.mode == BorrowerMode::recurring ? "recurring"
                                                                     : "arrivals";
    j["borrowers"] = json{{"mode", mode},
                          {"population", c.borrowers.population},
                          {"arrivals_per_period", c.borrowers.arrivals_per_period},
                          {"schedule_total", dist_to_json(c.borrowers.schedule_total)},
                          {"installments", dist_to_json(c.borrowers.installments)}};
    j["guarantors"] =
        json{{"frequency", c.guarantors.frequency},
             {"collateral", dist_to_json(c.guarantors.collateral)},
             {"annual_extra_spread", dist_to_json(c.guarantors.annual_extra_spread)},
             {"rating", rating_to_json(c.guarantors.rating)},
             {"policy",
              c.guarantors.policy == GuarantorPolicy::threshold ? "threshold" : "forced"}};
    j["investors"] = json{
        {"arrivals_per_period", c.investors.arrivals_per_period},
        {"amount", dist_to_json(c.investors.amount)},
        {"annual_expected_return", dist_to_json(c.investors.annual_expected_return)},
        {"eval_window", dist_to_json(c.investors.eval_window)},
        {"profit_withdraw_rate", dist_to_json(c.investors.profit_withdraw_rate)},
        {"loss_withdraw_rate", dist_to_json(c.investors.loss_withdraw_rate)},
        {"min_holding", dist_to_json(c.investors.min_holding)},
        {"enter_blind", c.investors.enter_blind}};
    j["seed_investor"] = json{{"amount", c.seed_investor.amount},
                              {"permanent", c.seed_investor.permanent}};
    j["improvement_threshold"] = c.improvement_threshold;
    j["p_refuse"] = c.p_refuse;
    j["metric_window"] = c.metric_window;
    return j.dump(indent);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path, {});
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

}  // namespace lendsim
