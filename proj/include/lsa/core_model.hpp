#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lsa/money.hpp"

namespace lsa {

enum class QosClass { Low, High };

/// Offering mode of the operator: which classes exist and with what capacity.
enum class QosScenario { Low, High, Mixed };

inline constexpr std::array<QosScenario, 3> kAllScenarios{QosScenario::Low, QosScenario::High,
                                                          QosScenario::Mixed};

/// Strict users apply only to their preferred class; non-strict users fall
/// back to the other class right after a rejection.
enum class AdmissionMode { NonStrict, Strict };

std::string_view to_string(QosScenario s);
std::string_view to_string(AdmissionMode m);
QosScenario parse_scenario(std::string_view s);
AdmissionMode parse_mode(std::string_view s);

/// Application-layer throughput targets of the two classes, in bits/s.
struct QosProfile {
    double q_low = 150e3;
    double q_high = 4.61e6;

    void validate() const;
    double ratio() const { return q_high / q_low; }
};

/// Largest admissible price multiplier: floor(q_high / q_low).
int k_max(const QosProfile& qos);

inline constexpr Cents kMinPriceLow = Cents::from_dollars(10);
inline constexpr Cents kMaxPriceLow = Cents::from_dollars(120);

/// A price point; the high-class price is always k times the low-class price.
class Prices {
public:
    /// Checks p_low in [$10, $120] and 2 <= k <= k_max(qos).
    Prices(Cents p_low, int k, const QosProfile& qos = {});

    Cents p_low() const { return p_low_; }
    int k() const { return k_; }
    Cents p_high() const { return k_ * p_low_; }

    friend bool operator==(const Prices&, const Prices&) = default;

private:
    Cents p_low_;
    int k_;
};

/// One PMSE user: preference trait `a` and per-class budgets in dollars.
struct User {
    double a = 0.5;
    double budget_low = 0.0;
    double budget_high = 0.0;

    /// True iff 0 < a < 1 and budget_high >= budget_low >= min_budget.
    bool valid(double min_budget = 10.0) const;
};

enum class Environment { Indoor, Outdoor };

/// One row of the supported-users table. Bandwidth and transmit power are
/// descriptive only.
struct TechCase {
    std::string_view id;
    int frequency_mhz;
    Environment environment;
    int n_l;
    int n_h;
    int n_lm;
    int n_hm;
    double bandwidth_mhz = 20.0;
    double tx_power_dbm = 30.0;
};

/// The six embedded rows, in table order.
std::span<const TechCase> tech_cases();
/// Looks a case up by id ("3800-indoor", ...); throws std::invalid_argument.
const TechCase& find_tech_case(std::string_view id);
/// Row index of `id` in tech_cases().
std::size_t tech_case_index(std::string_view id);

struct ScenarioCapacities {
    int cap_low = 0;
    int cap_high = 0;
};

ScenarioCapacities capacities_for(const TechCase& tech, QosScenario scenario);

struct AdmissionResult {
    std::vector<std::size_t> admitted_low;
    std::vector<std::size_t> admitted_high;
    std::vector<std::size_t> rejected;
};

struct AdmissionCounts {
    int n_low = 0;
    int n_high = 0;
};

/// w_H = a * P_L / (P_L + P_H) + (1 - a) * Q_H / (Q_L + Q_H). Throws
/// std::domain_error for a outside [0, 1].
double preference_weight_high(double a, const Prices& prices, const QosProfile& qos);

/// High iff w_high > 0.5.
constexpr QosClass preferred_class(double w_high) {
    return w_high > 0.5 ? QosClass::High : QosClass::Low;
}

/// Sequential capacity-constrained admission in index order of `users`.
AdmissionResult admit_market(std::span<const User> users, const Prices& prices,
                             ScenarioCapacities caps, const QosProfile& qos, AdmissionMode mode);

/// Same, processing users in the given order; indices in the result refer to
/// positions in `users`.
AdmissionResult admit_market(std::span<const User> users, std::span<const std::size_t> order,
                             const Prices& prices, ScenarioCapacities caps, const QosProfile& qos,
                             AdmissionMode mode);

/// Counting-only variant used by the Monte Carlo kernel.
AdmissionCounts admit_counts(std::span<const User> users, std::span<const std::size_t> order,
                             const Prices& prices, ScenarioCapacities caps, const QosProfile& qos,
                             AdmissionMode mode);

}  // namespace lsa
