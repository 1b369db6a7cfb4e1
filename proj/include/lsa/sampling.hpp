#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lsa/core_model.hpp"
#include "lsa/rng.hpp"

namespace lsa {

/// Multipliers of the budget distributions. Low-class mean and SD scale
/// P_L,max; high-class mean and SD scale (q_high / q_low) * B_L of the user.
struct BudgetCoefficients {
    double mu_l = 0.5;
    double sigma_l = 0.2;
    double mu_h = 0.2;
    double sigma_h = 0.2;

    friend bool operator==(const BudgetCoefficients&, const BudgetCoefficients&) = default;
};

/// Candidate sets, ascending. Scenario ids enumerate them with mu_l as the
/// outermost loop and sigma_h innermost.
struct BudgetCoefficientSets {
    std::vector<double> mu_l{0.5, 0.7, 0.9};
    std::vector<double> sigma_l{0.2, 0.4};
    std::vector<double> mu_h{0.2, 0.4, 0.6};
    std::vector<double> sigma_h{0.2, 0.4};

    int scenario_count() const;
};

inline constexpr int kBudgetScenarioCount = 36;

/// Coefficients of 1-based scenario `id`; throws std::domain_error when out
/// of range.
BudgetCoefficients budget_scenario_coefficients(int id, const BudgetCoefficientSets& sets = {});

/// Normal(mu, sigma) conditioned on x >= min. Rejection from the untruncated
/// normal; when P(X >= min) < 1e-3 it switches to inverse-CDF sampling of the
/// upper tail. sigma == 0 gives max(mu, min).
double sample_truncated_normal(RngStream& stream, double mu, double sigma, double min);

/// Acceptance probability below which sample_truncated_normal stops rejecting.
inline constexpr double kRejectionFloor = 1e-3;

struct SamplingParams {
    BudgetCoefficients coeffs;
    QosProfile qos;
    double p_l_max = 120.0;
    double min_budget = 10.0;
};

/// Draws a, then B_L, then B_H from `stream`.
User sample_user(RngStream& stream, const SamplingParams& params);

struct Population {
    std::vector<User> users;
    /// Admission order: a permutation of [0, users.size()).
    std::vector<std::size_t> order;
};

/// n users in index order, then one uniform permutation (Fisher-Yates).
Population sample_population(RngStream& stream, std::size_t n, const SamplingParams& params);

/// n_l + n_h: enough users to saturate either single-class scenario.
std::size_t population_size_rule(const TechCase& tech);

}  // namespace lsa
