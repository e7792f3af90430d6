#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lendsim/config.hpp"
#include "lendsim/demand.hpp"
#include "lendsim/engine.hpp"
#include "lendsim/io.hpp"
#include "lendsim/optimizer.hpp"
#include "lendsim/pricing.hpp"
#include "lendsim/validation.hpp"

namespace {

using namespace lendsim;

struct PriceArgs {
    double total = 100.0;
    int n = 3;
    double p = 0.0;
    double r = 0.0;
    double s = 0.0;
    std::optional<double> vc;
    std::optional<double> pg;
    std::optional<double> sg;
    std::string sweep;  // param=start:stop:step
    std::string out;
};

// One CSV quote row for the given parameter set.
void price_row(std::ostream& os, const PriceArgs& a) {
    const auto schedule = ReceivableSchedule::equal_installments(a.total, a.n);
    const RateSet rates{a.r, a.s};
    const double plain = anticipation(schedule, a.p, rates);
    os << format_double(a.total) << ',' << a.n << ',' << format_double(a.p) << ','
       << format_double(a.r) << ',' << format_double(a.s);
    if (a.vc) {
        const auto terms = make_guarantor_terms(*a.vc, a.pg.value_or(0.0),
                                                a.sg.value_or(0.0), a.r, a.n);
        const double guaranteed =
            anticipation_with_guarantor(schedule, a.p, rates, terms);
        os << ',' << format_double(*a.vc) << ',' << format_double(a.pg.value_or(0.0))
           << ',' << format_double(a.sg.value_or(0.0)) << ','
           << format_double(terms.asked_gain) << ',' << format_double(plain) << ','
           << format_double(guaranteed) << '\n';
    } else {
        os << ",,,,," << format_double(plain) << ",\n";
    }
}

int cmd_price(const PriceArgs& args) {
    std::ostringstream rows;
    rows << "total,n,p,r,s,vc,pg,sg,gs,anticipation,anticipation_with_guarantor\n";
    try {
        const bool sweeps_vc = args.sweep.rfind("vc=", 0) == 0;
        if ((args.pg || args.sg) && !args.vc && !sweeps_vc) {
            throw std::invalid_argument("--pg/--sg require --vc");
        }
        if (args.sweep.empty()) {
            price_row(rows, args);
        } else {
            const auto eq = args.sweep.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("sweep must look like p=0:0.3:0.05");
            }
            const std::string param = args.sweep.substr(0, eq);
            double start = 0.0, stop = 0.0, step = 0.0;
            char c1 = 0, c2 = 0;
            std::istringstream range(args.sweep.substr(eq + 1));
            range >> start >> c1 >> stop >> c2 >> step;
            if (!range || c1 != ':' || c2 != ':' || !(step > 0.0)) {
                throw std::invalid_argument("sweep must look like p=0:0.3:0.05");
            }
            for (double v = start; v <= stop + 1e-12; v += step) {
                PriceArgs point = args;
                if (param == "p") point.p = v;
                else if (param == "r") point.r = v;
                else if (param == "s") point.s = v;
                else if (param == "total") point.total = v;
                else if (param == "n") point.n = static_cast<int>(v + 0.5);
                else if (param == "vc") point.vc = v;
                else if (param == "pg") point.pg = v;
                else if (param == "sg") point.sg = v;
                else throw std::invalid_argument("unknown sweep parameter: " + param);
                price_row(rows, point);
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (args.out.empty()) {
        std::cout << rows.str();
    } else {
        std::ofstream file(args.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << args.out << '\n';
            return 1;
        }
        file << rows.str();
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed, int runs,
                 int threads, const std::string& out_dir, bool transactions) {
    const ScenarioConfig config = load_config(config_path);
    RunOptions options;
    options.keep_transactions = transactions;
    const auto results = run_batch(config, runs, seed, threads, options);
    write_simulation_bundle(out_dir, config, seed, threads, results, transactions);
    std::cout << "wrote " << out_dir << "/{manifest.json,series.csv,summary.json"
              << (transactions ? ",transactions.csv" : "") << "} (" << runs
              << " run" << (runs == 1 ? "" : "s") << ")\n";
    return 0;
}

int cmd_optimize(const std::string& config_path, const std::string& spreads_arg,
                 std::uint64_t seed, int runs, int threads,
                 const std::string& objective_name, const std::string& out_dir) {
    const ScenarioConfig config = load_config(config_path);
    std::vector<double> spreads;
    SweepObjective objective = SweepObjective::mean_book;
    try {
        std::istringstream list(spreads_arg);
        std::string token;
        while (std::getline(list, token, ',')) {
            if (token.empty()) continue;
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size()) {
                throw std::invalid_argument("malformed spread: " + token);
            }
            spreads.push_back(value);
        }
        if (spreads.empty()) {
            throw std::invalid_argument("spread list is empty");
        }
        objective = objective_from_name(objective_name);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range&) {
        std::cerr << "error: spread value out of range\n";
        return 2;
    }
    const auto sweep = sweep_spread(config, spreads, runs, seed, objective, threads);
    write_sweep_bundle(out_dir, config, seed, runs, threads, sweep);
    std::cout << "best spread = " << format_double(select_best(sweep)) << " ("
              << to_string(objective) << " objective); wrote " << out_dir
              << "/{manifest.json,samples.csv,best.json}\n";
    return 0;
}

int cmd_validate(const std::string& only, bool list) {
    if (list) {
        for (const auto& name : validation::check_names()) {
            std::cout << name << '\n';
        }
        return 0;
    }
    std::vector<validation::CheckResult> results;
    if (only.empty()) {
        results = validation::run_all();
    } else {
        try {
            results.push_back(validation::run_check(only));
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    bool all_passed = true;
    for (const auto& result : results) {
        std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << ": "
                  << result.detail << '\n';
        all_passed = all_passed && result.passed;
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lendsim - receivables-anticipation lending platform simulator"};
    app.require_subcommand(1);

    PriceArgs price_args;
    auto* price = app.add_subcommand("price", "Quote anticipation offers");
    price->add_option("--total", price_args.total, "Sum of the receivables");
    price->add_option("--n", price_args.n, "Number of equal installments");
    price->add_option("--p", price_args.p, "Per-period default probability estimate");
    price->add_option("--r", price_args.r, "Per-period base rate");
    price->add_option("--s", price_args.s, "Per-period platform spread");
    price->add_option("--vc", price_args.vc, "Guarantor collateral");
    price->add_option("--pg", price_args.pg, "Guarantor default estimate");
    price->add_option("--sg", price_args.sg, "Guarantor extra spread (per period)");
    price->add_option("--sweep", price_args.sweep,
                      "Sweep one parameter, e.g. p=0:0.3:0.05");
    price->add_option("--out", price_args.out, "Write CSV here instead of stdout");

    std::string config_path;
    std::uint64_t seed = 1;
    int runs = 1;
    int threads = 1;
    std::string out_dir = "out";
    bool transactions = false;
    auto* simulate = app.add_subcommand("simulate", "Run seeded scenario ensembles");
    simulate->add_option("--config", config_path, "Scenario config (JSON)")
        ->required();
    simulate->add_option("--seed", seed, "Base seed");
    simulate->add_option("--runs", runs, "Number of Monte Carlo runs")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--threads", threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_flag("--transactions", transactions,
                       "Also export the transaction logs");

    std::string spreads_arg;
    std::string objective_name = "mean";
    auto* optimize = app.add_subcommand("optimize", "Sweep the platform spread");
    optimize->add_option("--config", config_path, "Scenario config (JSON)")
        ->required();
    optimize->add_option("--spreads", spreads_arg,
                         "Comma-separated annual spread candidates")
        ->required();
    optimize->add_option("--seed", seed, "Base seed");
    optimize->add_option("--runs", runs, "Runs per candidate")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--threads", threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--objective", objective_name,
                         "Objective: mean | terminal | cumulative");
    optimize->add_option("--out", out_dir, "Output directory");

    std::string only;
    bool list = false;
    auto* validate = app.add_subcommand("validate", "Run the built-in scenario checks");
    validate->add_option("--only", only, "Run a single named check");
    validate->add_flag("--list", list, "List check names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (price->parsed()) {
            return cmd_price(price_args);
        }
        if (simulate->parsed()) {
            return cmd_simulate(config_path, seed, runs, threads, out_dir,
                                transactions);
        }
        if (optimize->parsed()) {
            return cmd_optimize(config_path, spreads_arg, seed, runs, threads,
                                objective_name, out_dir);
        }
        if (validate->parsed()) {
            return cmd_validate(only, list);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
