#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lsa/core_model.hpp"
#include "lsa/revenue.hpp"

namespace lsa {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Revenue of full-capacity admission, straight from the table counts.
Cents capacity_revenue(const TechCase& tech, QosScenario scenario, const GridPoint& point);

/// Infinite budgets, NonStrict, every table row and grid point: simulated
/// means equal capacity_revenue with zero spread.
CheckResult check_capacity_oracle(const PriceGrid& grid, int reps, std::uint64_t seed);

/// Every ordered population of 1..4 users over a small lattice of (a, B_L,
/// B_H), several price points and capacity pairs: per-class counts under
/// NonStrict are >= Strict, and both results are valid partitions.
CheckResult check_exhaustive_dominance();

/// Random populations: partition, capacity and budget invariants.
CheckResult check_admission_invariants(std::uint64_t seed, int trials);

/// Sample mean and variance against the closed-form lower-truncated normal
/// moments.
CheckResult check_truncated_normal_moments(std::uint64_t seed, std::size_t draws, double mu,
                                           double sigma, double min, double rel_tol);

/// w_H strictly decreasing in a and in k across a grid.
CheckResult check_preference_monotonicity();

/// True when `result` partitions [0, n), respects caps, and every admitted
/// user affords its class.
bool admission_is_valid(const AdmissionResult& result, std::span<const User> users,
                        const Prices& prices, ScenarioCapacities caps);

/// The checks run by `lsa_market validate`.
std::vector<CheckResult> run_quick_suite(std::uint64_t seed = 1);

}  // namespace lsa
