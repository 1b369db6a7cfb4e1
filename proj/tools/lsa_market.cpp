// Command-line driver for the LSA QoS-pricing market simulator.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsa/config.hpp"
#include "lsa/core_model.hpp"
#include "lsa/experiments.hpp"
#include "lsa/report.hpp"
#include "lsa/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int reps = 0;
    std::vector<std::string> tech;
    std::vector<int> budget_scenarios;
    std::string mode;
    std::vector<double> p_low;
    int k_min = 0;
    int k_max = 0;
    std::size_t population_size = 0;
    unsigned threads = 0;
    bool infinite_budgets = false;
    bool quiet = false;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--config", o.config_path, "JSON config file");
    cmd.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--seed", o.seed, "Master seed");
    cmd.add_option("--reps", o.reps, "Market replications per cell");
    cmd.add_option("--tech", o.tech, "Tech case id (repeatable), e.g. 3800-indoor");
    cmd.add_option("--budget-scenario", o.budget_scenarios, "Budget scenario id 1..36 (repeatable)");
    cmd.add_option("--mode", o.mode, "nonstrict | strict | both");
    cmd.add_option("--p-low", o.p_low, "Low-class price in dollars (repeatable)");
    cmd.add_option("--k-min", o.k_min, "Smallest price multiplier");
    cmd.add_option("--k-max", o.k_max, "Largest price multiplier");
    cmd.add_option("--population-size", o.population_size, "Users per market (default N_L + N_H)");
    cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    cmd.add_flag("--infinite-budgets", o.infinite_budgets, "Give every user unlimited budgets");
    cmd.add_flag("-q,--quiet", o.quiet, "No progress output");
}

lsa::ConfigOverrides overrides_from(const CLI::App& cmd, const CommonOptions& o) {
    lsa::ConfigOverrides ov;
    if (cmd.count("--seed")) ov.seed = o.seed;
    if (cmd.count("--reps")) ov.reps = o.reps;
    ov.tech_cases = o.tech;
    ov.budget_scenarios = o.budget_scenarios;
    if (cmd.count("--mode")) ov.mode = o.mode;
    ov.p_low_dollars = o.p_low;
    if (cmd.count("--k-min")) ov.k_min = o.k_min;
    if (cmd.count("--k-max")) ov.k_max = o.k_max;
    if (cmd.count("--population-size")) ov.population_size = o.population_size;
    if (cmd.count("--threads")) ov.threads = o.threads;
    ov.infinite_budgets = o.infinite_budgets;
    return ov;
}

lsa::ExperimentConfig resolve(const CLI::App& cmd, const CommonOptions& o) {
    std::optional<std::filesystem::path> path;
    if (!o.config_path.empty()) path = o.config_path;
    return lsa::load_config(path, overrides_from(cmd, o));
}

void finish(std::string_view command, const lsa::ExperimentConfig& cfg,
            const std::vector<std::filesystem::path>& files, const CommonOptions& o) {
    const auto manifest = lsa::make_manifest(command, cfg, files);
    const auto path = lsa::write_manifest(manifest, o.out_dir);
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
    std::cout << "wrote " << path.string() << '\n';
}

int cmd_sweep_k(const CLI::App& cmd, const CommonOptions& o) {
    // Defaults to the single-market case study: 3800 MHz indoor, scenario 21.
    CommonOptions opts = o;
    if (opts.tech.empty()) opts.tech = {"3800-indoor"};
    if (opts.budget_scenarios.empty()) opts.budget_scenarios = {21};
    lsa::ExperimentConfig cfg = resolve(cmd, opts);
    if (!cmd.count("--mode") && o.config_path.empty()) cfg.modes = {lsa::AdmissionMode::NonStrict};
    if (cfg.tech_cases.size() != 1 || cfg.budget_scenarios.size() != 1) {
        throw lsa::ConfigError("sweep-k: select exactly one --tech and one --budget-scenario");
    }
    const auto& tech = lsa::find_tech_case(cfg.tech_cases.front());
    std::vector<std::filesystem::path> files;
    for (lsa::AdmissionMode mode : cfg.modes) {
        const auto surface = lsa::run_monte_carlo(cfg, cfg.budget_scenarios.front(), tech, mode);
        files.push_back(lsa::emit_sweep_csv(surface, opts.out_dir));
    }
    finish("sweep-k", cfg, files, opts);
    return kExitOk;
}

lsa::ProgressFn progress_printer(const CommonOptions& o) {
    if (o.quiet) return {};
    return [](std::string_view msg) { std::cerr << msg << '\n'; };
}

int cmd_budget_sweep(const CLI::App& cmd, const CommonOptions& o) {
    const lsa::ExperimentConfig cfg = resolve(cmd, o);
    const auto rows = lsa::run_budget_sweep(cfg, progress_printer(o));
    finish("budget-sweep", cfg, {lsa::emit_budget_sweep_csv(rows, o.out_dir)}, o);
    return kExitOk;
}

int cmd_compare_modes(const CLI::App& cmd, const CommonOptions& o) {
    const lsa::ExperimentConfig cfg = resolve(cmd, o);
    const auto cmps = lsa::run_mode_comparison(cfg, progress_printer(o));
    std::int64_t violations = 0;
    std::int64_t checks = 0;
    for (const auto& c : cmps) {
        violations += c.dominance_violations;
        checks += c.dominance_checks;
    }
    finish("compare-modes", cfg, lsa::emit_comparison_csv(cmps, o.out_dir), o);
    std::cout << "paired revenue checks: " << checks << ", non-strict < strict: " << violations << '\n';
    return violations == 0 ? kExitOk : kExitValidation;
}

int cmd_validate(const CommonOptions& o) {
    bool ok = true;
    for (const auto& r : lsa::run_quick_suite(o.seed ? o.seed : 1)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " -- " << r.detail << '\n';
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_list_tech_cases() {
    std::cout << "id,frequency_mhz,environment,n_l,n_h,n_lm,n_hm,bandwidth_mhz,tx_power_dbm\n";
    for (const auto& t : lsa::tech_cases()) {
        std::cout << t.id << ',' << t.frequency_mhz << ','
                  << (t.environment == lsa::Environment::Indoor ? "indoor" : "outdoor") << ','
                  << t.n_l << ',' << t.n_h << ',' << t.n_lm << ',' << t.n_hm << ','
                  << t.bandwidth_mhz << ',' << t.tx_power_dbm << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QoS-aware pricing simulator for an LSA spectrum market"};
    app.require_subcommand(1);

    CommonOptions sweep_opts, budget_opts, compare_opts, validate_opts;
    auto* sweep = app.add_subcommand("sweep-k", "Mean revenue over the (P_L, K) grid for one market setup");
    add_common(*sweep, sweep_opts);
    auto* budget = app.add_subcommand("budget-sweep", "Revenue-maximizing prices per budget scenario");
    add_common(*budget, budget_opts);
    auto* compare = app.add_subcommand("compare-modes", "Strict vs non-strict class choice on paired markets");
    add_common(*compare, compare_opts);
    auto* validate = app.add_subcommand("validate", "Analytic oracle and property quick-suite");
    validate->add_option("--seed", validate_opts.seed, "Seed for randomized checks");
    auto* list = app.add_subcommand("list-tech-cases", "Print the embedded supported-users table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) return cmd_sweep_k(*sweep, sweep_opts);
        if (*budget) return cmd_budget_sweep(*budget, budget_opts);
        if (*compare) return cmd_compare_modes(*compare, compare_opts);
        if (*validate) return cmd_validate(validate_opts);
        if (*list) return cmd_list_tech_cases();
    } catch (const lsa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
