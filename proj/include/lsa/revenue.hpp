#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsa/core_model.hpp"
#include "lsa/money.hpp"
#include "lsa/sampling.hpp"

namespace lsa {

struct GridPoint {
    Cents p_low;
    int k = 2;

    Cents p_high() const { return k * p_low; }
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Cartesian product of low-class prices and an inclusive K range.
struct PriceGrid {
    std::vector<Cents> p_low{Cents::from_dollars(30), Cents::from_dollars(60),
                             Cents::from_dollars(90), Cents::from_dollars(120)};
    int k_min = 2;
    int k_max = 30;

    /// Throws std::domain_error if any point would not form valid Prices.
    void validate(const QosProfile& qos) const;
    /// p_low-major, ascending k within each p_low.
    std::vector<GridPoint> points() const;
};

struct RevenueRecord {
    QosScenario scenario;
    GridPoint point;
    Cents revenue;
    int n_low = 0;
    int n_high = 0;
};

Cents revenue_of(const AdmissionCounts& counts, const Prices& prices);
Cents revenue_of(const AdmissionResult& result, const Prices& prices);

struct ScenarioScore {
    QosScenario scenario;
    int score = 0;
};

/// Budget-free benchmark max{N_L, N_H K, N_LM + N_HM K}. Ties resolve in the
/// priority order Low, Mixed, High.
ScenarioScore theoretical_best_scenario(const TechCase& tech, int k);

/// Revenue and counts for each scenario (Low, High, Mixed order) and each grid
/// point, all on the same population and admission order.
std::vector<RevenueRecord> evaluate_grid(const Population& population,
                                         std::span<const GridPoint> grid, const TechCase& tech,
                                         const QosProfile& qos, AdmissionMode mode);

/// Exact replication sums at one (scenario, grid point).
struct GridStatistics {
    QosScenario scenario = QosScenario::Low;
    GridPoint point;
    std::int64_t reps = 0;
    std::int64_t sum_revenue = 0;  // cents
    __int128 sum_sq_revenue = 0;   // cents^2
    std::int64_t sum_n_low = 0;
    std::int64_t sum_n_high = 0;

    void add(const RevenueRecord& r);
    void merge(const GridStatistics& other);

    double mean_revenue() const;
    /// Sample standard deviation of revenue in cents; 0 for a single replication.
    double sd_revenue() const;
    double mean_n_low() const;
    double mean_n_high() const;
};

struct MaxRevenueRecord {
    QosScenario scenario = QosScenario::Low;
    GridPoint point;
    GridStatistics stats;

    Cents p_low() const { return point.p_low; }
    int k() const { return point.k; }
    Cents p_high() const { return point.p_high(); }
    double mean_revenue() const { return stats.mean_revenue(); }
    double mean_n_low() const { return stats.mean_n_low(); }
    double mean_n_high() const { return stats.mean_n_high(); }
};

/// Compares mean revenues exactly; negative, zero or positive like <=>.
int compare_mean_revenue(const GridStatistics& a, const GridStatistics& b);

/// Argmax of mean revenue over the records of `scenario`; ties go to the
/// lowest p_low, then the lowest k. Throws std::domain_error if none match.
MaxRevenueRecord find_max(std::span<const GridStatistics> records, QosScenario scenario);

}  // namespace lsa
