#include "lsa/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lsa {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& known) {
    if (!obj.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) fail(prefix.empty() ? key : prefix + "." + key, "unknown key");
    }
}

template <typename T>
T get_as(const json& v, const std::string& path) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        fail(path, "wrong type");
    }
}

std::int64_t integer_at(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

Cents dollars_to_cents(double dollars, const std::string& path) {
    const double scaled = dollars * 100.0;
    const double rounded = std::round(scaled);
    if (!std::isfinite(scaled) || std::fabs(scaled - rounded) > 1e-6) {
        fail(path, "price must be a whole number of cents");
    }
    return Cents{static_cast<std::int64_t>(rounded)};
}

std::vector<double> number_list(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number_at(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<AdmissionMode> parse_modes(const std::string& s, const std::string& path) {
    if (s == "both") return {AdmissionMode::NonStrict, AdmissionMode::Strict};
    try {
        return {parse_mode(s)};
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

// Runs validate() and rewrites its message with the config key path, which
// ExperimentConfig::validate already puts first.
void validate_config(const ExperimentConfig& c) {
    try {
        c.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("tech_cases: ") + e.what());
    }
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
    ExperimentConfig c;
    if (doc.is_null()) return c;
    reject_unknown(doc, "",
                   {"seed", "reps", "tech_cases", "budget_scenarios", "modes", "price_grid",
                    "population_size", "infinite_budgets", "threads", "qos", "p_l_max",
                    "min_budget", "budget_coefficients"});

    if (doc.contains("seed")) {
        const auto& v = doc["seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            fail("seed", "expected a non-negative integer");
        }
        c.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("reps")) c.reps = static_cast<int>(integer_at(doc["reps"], "reps"));
    if (doc.contains("tech_cases")) {
        c.tech_cases = get_as<std::vector<std::string>>(doc["tech_cases"], "tech_cases");
    }
    if (doc.contains("budget_scenarios")) {
        c.budget_scenarios = get_as<std::vector<int>>(doc["budget_scenarios"], "budget_scenarios");
    }
    if (doc.contains("modes")) {
        const auto& v = doc["modes"];
        if (v.is_string()) {
            c.modes = parse_modes(v.get<std::string>(), "modes");
        } else {
            c.modes.clear();
            for (const auto& m : get_as<std::vector<std::string>>(v, "modes")) {
                for (AdmissionMode mode : parse_modes(m, "modes")) c.modes.push_back(mode);
            }
        }
    }
    if (doc.contains("price_grid")) {
        const auto& g = doc["price_grid"];
        reject_unknown(g, "price_grid", {"p_low", "k_min", "k_max"});
        if (g.contains("p_low")) {
            c.grid.p_low.clear();
            const auto values = number_list(g["p_low"], "price_grid.p_low");
            for (std::size_t i = 0; i < values.size(); ++i) {
                c.grid.p_low.push_back(
                    dollars_to_cents(values[i], "price_grid.p_low[" + std::to_string(i) + "]"));
            }
        }
        if (g.contains("k_min")) c.grid.k_min = static_cast<int>(integer_at(g["k_min"], "price_grid.k_min"));
        if (g.contains("k_max")) c.grid.k_max = static_cast<int>(integer_at(g["k_max"], "price_grid.k_max"));
    }
    if (doc.contains("population_size") && !doc["population_size"].is_null()) {
        const auto n = integer_at(doc["population_size"], "population_size");
        if (n < 1) fail("population_size", "must be at least 1");
        c.population_size = static_cast<std::size_t>(n);
    }
    if (doc.contains("infinite_budgets")) {
        if (!doc["infinite_budgets"].is_boolean()) fail("infinite_budgets", "expected a boolean");
        c.infinite_budgets = doc["infinite_budgets"].get<bool>();
    }
    if (doc.contains("threads")) {
        const auto n = integer_at(doc["threads"], "threads");
        if (n < 0) fail("threads", "must be non-negative");
        c.threads = static_cast<unsigned>(n);
    }
    if (doc.contains("qos")) {
        const auto& q = doc["qos"];
        reject_unknown(q, "qos", {"q_low_bps", "q_high_bps"});
        if (q.contains("q_low_bps")) c.qos.q_low = number_at(q["q_low_bps"], "qos.q_low_bps");
        if (q.contains("q_high_bps")) c.qos.q_high = number_at(q["q_high_bps"], "qos.q_high_bps");
        if (!(c.qos.q_low > 0.0) || !(c.qos.q_high > c.qos.q_low)) {
            fail("qos", "requires 0 < q_low_bps < q_high_bps");
        }
    }
    if (doc.contains("p_l_max")) c.p_l_max = number_at(doc["p_l_max"], "p_l_max");
    if (doc.contains("min_budget")) c.min_budget = number_at(doc["min_budget"], "min_budget");
    if (doc.contains("budget_coefficients")) {
        const auto& b = doc["budget_coefficients"];
        reject_unknown(b, "budget_coefficients", {"mu_l", "sigma_l", "mu_h", "sigma_h"});
        if (b.contains("mu_l")) c.budget_sets.mu_l = number_list(b["mu_l"], "budget_coefficients.mu_l");
        if (b.contains("sigma_l")) c.budget_sets.sigma_l = number_list(b["sigma_l"], "budget_coefficients.sigma_l");
        if (b.contains("mu_h")) c.budget_sets.mu_h = number_list(b["mu_h"], "budget_coefficients.mu_h");
        if (b.contains("sigma_h")) c.budget_sets.sigma_h = number_list(b["sigma_h"], "budget_coefficients.sigma_h");
        // A changed coefficient set changes the scenario count.
        if (!doc.contains("budget_scenarios")) {
            c.budget_scenarios.clear();
            for (int i = 1; i <= c.budget_sets.scenario_count(); ++i) c.budget_scenarios.push_back(i);
        }
    }
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json modes = json::array();
    for (AdmissionMode m : c.modes) modes.push_back(std::string(to_string(m)));
    json p_low = json::array();
    for (Cents p : c.grid.p_low) p_low.push_back(p.dollars());
    json doc{
        {"seed", c.seed},
        {"reps", c.reps},
        {"tech_cases", c.tech_cases},
        {"budget_scenarios", c.budget_scenarios},
        {"modes", modes},
        {"price_grid", {{"p_low", p_low}, {"k_min", c.grid.k_min}, {"k_max", c.grid.k_max}}},
        {"population_size", c.population_size ? json(*c.population_size) : json(nullptr)},
        {"infinite_budgets", c.infinite_budgets},
        {"threads", c.threads},
        {"qos", {{"q_low_bps", c.qos.q_low}, {"q_high_bps", c.qos.q_high}}},
        {"p_l_max", c.p_l_max},
        {"min_budget", c.min_budget},
        {"budget_coefficients",
         {{"mu_l", c.budget_sets.mu_l},
          {"sigma_l", c.budget_sets.sigma_l},
          {"mu_h", c.budget_sets.mu_h},
          {"sigma_h", c.budget_sets.sigma_h}}},
    };
    return doc;
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const ConfigOverrides& o) {
    json doc;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigError(path->string() + ": cannot open config file");
        std::stringstream buf;
        buf << in.rdbuf();
        // Whitespace-only files count as an empty config.
        if (buf.str().find_first_not_of(" \t\r\n") != std::string::npos) {
            try {
                doc = json::parse(buf.str());
            } catch (const json::parse_error& e) {
                throw ConfigError(path->string() + ": malformed JSON: " + e.what());
            }
        }
    }
    ExperimentConfig c = config_from_json(doc);

    if (o.seed) c.seed = *o.seed;
    if (o.reps) c.reps = *o.reps;
    if (!o.tech_cases.empty()) c.tech_cases = o.tech_cases;
    if (!o.budget_scenarios.empty()) c.budget_scenarios = o.budget_scenarios;
    if (o.mode) c.modes = parse_modes(*o.mode, "--mode");
    if (!o.p_low_dollars.empty()) {
        c.grid.p_low.clear();
        for (double d : o.p_low_dollars) c.grid.p_low.push_back(dollars_to_cents(d, "--p-low"));
    }
    if (o.k_min) c.grid.k_min = *o.k_min;
    if (o.k_max) c.grid.k_max = *o.k_max;
    if (o.population_size) c.population_size = *o.population_size;
    if (o.threads) c.threads = *o.threads;
    if (o.infinite_budgets) c.infinite_budgets = true;

    validate_config(c);
    return c;
}

}  // namespace lsa
