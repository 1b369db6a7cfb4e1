#include "lsa/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lsa {

namespace {

// Bandwidth 20 MHz and BS transmit power 30 dBm for every row.
constexpr std::array<TechCase, 6> kTechCases{{
    {"800-indoor", 800, Environment::Indoor, 65, 6, 21, 3},
    {"800-outdoor", 800, Environment::Outdoor, 7, 2, 4, 1},
    {"2600-indoor", 2600, Environment::Indoor, 36, 4, 13, 2},
    {"2600-outdoor", 2600, Environment::Outdoor, 31, 4, 12, 2},
    {"3800-indoor", 3800, Environment::Indoor, 37, 4, 13, 2},
    {"3800-outdoor", 3800, Environment::Outdoor, 33, 4, 12, 2},
}};

bool affords(const User& u, QosClass c, const Prices& prices) {
    return c == QosClass::High ? u.budget_high >= prices.p_high().dollars()
                               : u.budget_low >= prices.p_low().dollars();
}

constexpr QosClass other(QosClass c) { return c == QosClass::High ? QosClass::Low : QosClass::High; }

// Shared admission loop: `admit(index, class)` on admission, `reject(index)`
// otherwise. Capacity is consumed at the moment of admission.
template <typename Admit, typename Reject>
void run_admission(std::span<const User> users, std::span<const std::size_t> order,
                   const Prices& prices, ScenarioCapacities caps, const QosProfile& qos,
                   AdmissionMode mode, Admit&& admit, Reject&& reject) {
    int remaining[2] = {caps.cap_low, caps.cap_high};
    auto slot = [&](QosClass c) -> int& { return remaining[c == QosClass::High ? 1 : 0]; };
    auto try_class = [&](const User& u, QosClass c) {
        if (slot(c) > 0 && affords(u, c, prices)) {
            --slot(c);
            return true;
        }
        return false;
    };

    for (std::size_t idx : order) {
        const User& u = users[idx];
        const QosClass first = preferred_class(preference_weight_high(u.a, prices, qos));
        if (try_class(u, first)) {
            admit(idx, first);
        } else if (mode == AdmissionMode::NonStrict && try_class(u, other(first))) {
            admit(idx, other(first));
        } else {
            reject(idx);
        }
    }
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    return order;
}

}  // namespace

std::string_view to_string(QosScenario s) {
    switch (s) {
        case QosScenario::Low: return "low";
        case QosScenario::High: return "high";
        case QosScenario::Mixed: return "mixed";
    }
    return "?";
}

std::string_view to_string(AdmissionMode m) {
    return m == AdmissionMode::Strict ? "strict" : "nonstrict";
}

QosScenario parse_scenario(std::string_view s) {
    if (s == "low") return QosScenario::Low;
    if (s == "high") return QosScenario::High;
    if (s == "mixed") return QosScenario::Mixed;
    throw std::invalid_argument("unknown QoS scenario '" + std::string(s) + "'");
}

AdmissionMode parse_mode(std::string_view s) {
    if (s == "nonstrict" || s == "non-strict") return AdmissionMode::NonStrict;
    if (s == "strict") return AdmissionMode::Strict;
    throw std::invalid_argument("unknown admission mode '" + std::string(s) + "'");
}

void QosProfile::validate() const {
    if (!(q_low > 0.0) || !(q_high > q_low) || !std::isfinite(q_high)) {
        throw std::domain_error("QoS profile requires 0 < q_low < q_high");
    }
}

int k_max(const QosProfile& qos) {
    qos.validate();
    return static_cast<int>(std::floor(qos.q_high / qos.q_low));
}

Prices::Prices(Cents p_low, int k, const QosProfile& qos) : p_low_(p_low), k_(k) {
    if (p_low < kMinPriceLow || p_low > kMaxPriceLow) {
        throw std::domain_error("p_low must lie in [$10, $120], got " +
                                format_ratio(p_low.value, 100, 2));
    }
    if (k < 2 || k > k_max(qos)) {
        throw std::domain_error("k must lie in [2, " + std::to_string(k_max(qos)) + "], got " +
                                std::to_string(k));
    }
}

bool User::valid(double min_budget) const {
    return a > 0.0 && a < 1.0 && budget_low >= min_budget && budget_high >= budget_low;
}

std::span<const TechCase> tech_cases() { return kTechCases; }

std::size_t tech_case_index(std::string_view id) {
    for (std::size_t i = 0; i < kTechCases.size(); ++i) {
        if (kTechCases[i].id == id) return i;
    }
    throw std::invalid_argument("unknown tech case '" + std::string(id) + "'");
}

const TechCase& find_tech_case(std::string_view id) { return kTechCases[tech_case_index(id)]; }

ScenarioCapacities capacities_for(const TechCase& tech, QosScenario scenario) {
    switch (scenario) {
        case QosScenario::Low: return {tech.n_l, 0};
        case QosScenario::High: return {0, tech.n_h};
        case QosScenario::Mixed: return {tech.n_lm, tech.n_hm};
    }
    return {};
}

double preference_weight_high(double a, const Prices& prices, const QosProfile& qos) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("preference parameter a must lie in [0, 1]");
    // P_L / (P_L + K P_L) reduces to 1 / (1 + K).
    const double price_term = 1.0 / (1.0 + prices.k());
    const double qos_term = qos.q_high / (qos.q_low + qos.q_high);
    return a * price_term + (1.0 - a) * qos_term;
}

AdmissionResult admit_market(std::span<const User> users, const Prices& prices,
                             ScenarioCapacities caps, const QosProfile& qos, AdmissionMode mode) {
    const auto order = identity_order(users.size());
    return admit_market(users, order, prices, caps, qos, mode);
}

AdmissionResult admit_market(std::span<const User> users, std::span<const std::size_t> order,
                             const Prices& prices, ScenarioCapacities caps, const QosProfile& qos,
                             AdmissionMode mode) {
    AdmissionResult out;
    run_admission(
        users, order, prices, caps, qos, mode,
        [&](std::size_t i, QosClass c) {
            (c == QosClass::High ? out.admitted_high : out.admitted_low).push_back(i);
        },
        [&](std::size_t i) { out.rejected.push_back(i); });
    return out;
}

AdmissionCounts admit_counts(std::span<const User> users, std::span<const std::size_t> order,
                             const Prices& prices, ScenarioCapacities caps, const QosProfile& qos,
                             AdmissionMode mode) {
    AdmissionCounts out;
    run_admission(
        users, order, prices, caps, qos, mode,
        [&](std::size_t, QosClass c) { ++(c == QosClass::High ? out.n_high : out.n_low); },
        [](std::size_t) {});
    return out;
}

}  // namespace lsa
