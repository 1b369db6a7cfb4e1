#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsa/experiments.hpp"

namespace lsa {

/// Malformed file, unknown key or out-of-range value. The message starts with
/// the offending key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Command-line values; each set field replaces the file value.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::vector<std::string> tech_cases;
    std::vector<int> budget_scenarios;
    std::optional<std::string> mode;  // "nonstrict", "strict" or "both"
    std::vector<double> p_low_dollars;
    std::optional<int> k_min;
    std::optional<int> k_max;
    std::optional<std::size_t> population_size;
    std::optional<unsigned> threads;
    bool infinite_budgets = false;
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Reads `path` (if given), applies overrides, validates.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const ConfigOverrides& overrides);

}  // namespace lsa
