#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsa/core_model.hpp"
#include "lsa/revenue.hpp"
#include "lsa/sampling.hpp"

namespace lsa {

struct ExperimentConfig {
    std::uint64_t seed = 20190520;
    int reps = 1000;
    std::vector<std::string> tech_cases{"800-indoor", "800-outdoor", "3800-indoor"};
    std::vector<int> budget_scenarios = all_budget_scenarios();
    std::vector<AdmissionMode> modes{AdmissionMode::NonStrict, AdmissionMode::Strict};
    PriceGrid grid;
    std::optional<std::size_t> population_size;
    /// Replaces every sampled budget by +inf (after drawing it, so the
    /// preference draws are unchanged).
    bool infinite_budgets = false;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
    QosProfile qos;
    double p_l_max = 120.0;
    double min_budget = 10.0;
    BudgetCoefficientSets budget_sets;

    static std::vector<int> all_budget_scenarios();
    /// Throws std::domain_error / std::invalid_argument naming the bad field.
    void validate() const;
};

/// Stream of one replication: seed -> budget scenario -> table row -> replication.
RngStream replication_stream(const ExperimentConfig& config, int budget_scenario,
                             const TechCase& tech, int replication);

Population sample_replication(const ExperimentConfig& config, int budget_scenario,
                              const TechCase& tech, int replication);

/// FNV-1a over the bit patterns of every user field and the order.
std::uint64_t population_digest(const Population& population);

struct SweepSurface {
    int budget_scenario = 0;
    std::string tech_case;
    AdmissionMode mode = AdmissionMode::NonStrict;
    int reps = 0;
    /// Scenario-major (Low, High, Mixed), grid order within a scenario.
    std::vector<GridStatistics> points;

    std::span<const GridStatistics> scenario(QosScenario s) const;
};

struct CellResult {
    /// One surface per requested mode, in request order.
    std::vector<SweepSurface> surfaces;
    /// Per replication, grid point and scenario: revenue(NonStrict) < revenue(Strict).
    /// Only counted when both modes are requested.
    std::int64_t dominance_violations = 0;
    std::int64_t dominance_checks = 0;
    /// Fold of population_digest over replications in ascending order.
    std::uint64_t population_digest = 0;
};

/// All replications of one (budget scenario, tech case) for the given modes,
/// every mode on the same populations.
CellResult simulate_cell(const ExperimentConfig& config, int budget_scenario,
                         const TechCase& tech, std::span<const AdmissionMode> modes);

SweepSurface run_monte_carlo(const ExperimentConfig& config, int budget_scenario,
                             const TechCase& tech, AdmissionMode mode);

struct BudgetSweepRow {
    int budget_scenario = 0;
    std::string tech_case;
    AdmissionMode mode = AdmissionMode::NonStrict;
    MaxRevenueRecord max;
};

using ProgressFn = std::function<void(std::string_view)>;

/// Rows ordered by budget scenario, tech case, mode, QoS scenario.
std::vector<BudgetSweepRow> run_budget_sweep(const ExperimentConfig& config,
                                             const ProgressFn& progress = {});

struct ModeComparison {
    int budget_scenario = 0;
    std::string tech_case;
    SweepSurface nonstrict;
    SweepSurface strict;
    std::array<MaxRevenueRecord, 3> max_nonstrict;
    std::array<MaxRevenueRecord, 3> max_strict;
    std::int64_t dominance_violations = 0;
    std::int64_t dominance_checks = 0;
    std::uint64_t population_digest = 0;
};

std::vector<ModeComparison> run_mode_comparison(const ExperimentConfig& config,
                                                const ProgressFn& progress = {});

}  // namespace lsa
