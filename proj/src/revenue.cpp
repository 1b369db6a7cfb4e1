#include "lsa/revenue.hpp"

#include <cmath>
#include <stdexcept>

namespace lsa {

void PriceGrid::validate(const QosProfile& qos) const {
    if (p_low.empty()) throw std::domain_error("price grid needs at least one p_low value");
    if (k_min > k_max) throw std::domain_error("price grid k_min exceeds k_max");
    for (Cents p : p_low) {
        Prices(p, k_min, qos);
        Prices(p, k_max, qos);
    }
}

std::vector<GridPoint> PriceGrid::points() const {
    std::vector<GridPoint> out;
    out.reserve(p_low.size() * static_cast<std::size_t>(std::max(0, k_max - k_min + 1)));
    for (Cents p : p_low) {
        for (int k = k_min; k <= k_max; ++k) out.push_back({p, k});
    }
    return out;
}

Cents revenue_of(const AdmissionCounts& counts, const Prices& prices) {
    return counts.n_low * prices.p_low() + counts.n_high * prices.p_high();
}

Cents revenue_of(const AdmissionResult& result, const Prices& prices) {
    return revenue_of(AdmissionCounts{static_cast<int>(result.admitted_low.size()),
                                      static_cast<int>(result.admitted_high.size())},
                      prices);
}

ScenarioScore theoretical_best_scenario(const TechCase& tech, int k) {
    if (k < 2) throw std::domain_error("k must be at least 2");
    ScenarioScore best{QosScenario::Low, tech.n_l};
    const int mixed = tech.n_lm + tech.n_hm * k;
    if (mixed > best.score) best = {QosScenario::Mixed, mixed};
    const int high = tech.n_h * k;
    if (high > best.score) best = {QosScenario::High, high};
    return best;
}

std::vector<RevenueRecord> evaluate_grid(const Population& population,
                                         std::span<const GridPoint> grid, const TechCase& tech,
                                         const QosProfile& qos, AdmissionMode mode) {
    std::vector<RevenueRecord> out;
    out.reserve(kAllScenarios.size() * grid.size());
    for (QosScenario scenario : kAllScenarios) {
        const ScenarioCapacities caps = capacities_for(tech, scenario);
        for (const GridPoint& g : grid) {
            const Prices prices(g.p_low, g.k, qos);
            const AdmissionCounts c =
                admit_counts(population.users, population.order, prices, caps, qos, mode);
            out.push_back({scenario, g, revenue_of(c, prices), c.n_low, c.n_high});
        }
    }
    return out;
}

void GridStatistics::add(const RevenueRecord& r) {
    ++reps;
    sum_revenue += r.revenue.value;
    sum_sq_revenue += static_cast<__int128>(r.revenue.value) * r.revenue.value;
    sum_n_low += r.n_low;
    sum_n_high += r.n_high;
}

void GridStatistics::merge(const GridStatistics& o) {
    reps += o.reps;
    sum_revenue += o.sum_revenue;
    sum_sq_revenue += o.sum_sq_revenue;
    sum_n_low += o.sum_n_low;
    sum_n_high += o.sum_n_high;
}

double GridStatistics::mean_revenue() const {
    return reps ? static_cast<double>(sum_revenue) / static_cast<double>(reps) : 0.0;
}

double GridStatistics::sd_revenue() const {
    if (reps < 2) return 0.0;
    // n * sum(x^2) - (sum x)^2 is exact and non-negative.
    const __int128 num = static_cast<__int128>(reps) * sum_sq_revenue -
                         static_cast<__int128>(sum_revenue) * sum_revenue;
    const long double var = static_cast<long double>(num) /
                            (static_cast<long double>(reps) * static_cast<long double>(reps - 1));
    return static_cast<double>(std::sqrt(var));
}

double GridStatistics::mean_n_low() const {
    return reps ? static_cast<double>(sum_n_low) / static_cast<double>(reps) : 0.0;
}

double GridStatistics::mean_n_high() const {
    return reps ? static_cast<double>(sum_n_high) / static_cast<double>(reps) : 0.0;
}

int compare_mean_revenue(const GridStatistics& a, const GridStatistics& b) {
    const __int128 lhs = static_cast<__int128>(a.sum_revenue) * b.reps;
    const __int128 rhs = static_cast<__int128>(b.sum_revenue) * a.reps;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

MaxRevenueRecord find_max(std::span<const GridStatistics> records, QosScenario scenario) {
    const GridStatistics* best = nullptr;
    for (const GridStatistics& r : records) {
        if (r.scenario != scenario || r.reps == 0) continue;
        if (!best) {
            best = &r;
            continue;
        }
        const int cmp = compare_mean_revenue(r, *best);
        const bool cheaper = r.point.p_low < best->point.p_low ||
                             (r.point.p_low == best->point.p_low && r.point.k < best->point.k);
        if (cmp > 0 || (cmp == 0 && cheaper)) best = &r;
    }
    if (!best) {
        throw std::domain_error("find_max: no records for scenario " +
                                std::string(to_string(scenario)));
    }
    return {scenario, best->point, *best};
}

}  // namespace lsa
