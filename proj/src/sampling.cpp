#include "lsa/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/special_functions/erf.hpp>

namespace lsa {

int BudgetCoefficientSets::scenario_count() const {
    return static_cast<int>(mu_l.size() * sigma_l.size() * mu_h.size() * sigma_h.size());
}

BudgetCoefficients budget_scenario_coefficients(int id, const BudgetCoefficientSets& sets) {
    const int count = sets.scenario_count();
    if (id < 1 || id > count) {
        throw std::domain_error("budget scenario id must lie in [1, " + std::to_string(count) +
                                "], got " + std::to_string(id));
    }
    auto r = static_cast<std::size_t>(id - 1);
    const std::size_t i_sh = r % sets.sigma_h.size();
    r /= sets.sigma_h.size();
    const std::size_t i_mh = r % sets.mu_h.size();
    r /= sets.mu_h.size();
    const std::size_t i_sl = r % sets.sigma_l.size();
    r /= sets.sigma_l.size();
    return {sets.mu_l[r], sets.sigma_l[i_sl], sets.mu_h[i_mh], sets.sigma_h[i_sh]};
}

double sample_truncated_normal(RngStream& stream, double mu, double sigma, double min) {
    if (sigma <= 0.0) return std::max(mu, min);
    const double alpha = (min - mu) / sigma;
    const double accept = 0.5 * std::erfc(alpha / std::numbers::sqrt2);
    if (accept >= kRejectionFloor) {
        for (;;) {
            const double x = mu + sigma * stream.normal();
            if (x >= min) return x;
        }
    }
    // Upper-tail quantile: P(Z > z) = u * accept.
    const double tail = stream.uniform() * accept;
    const double z = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * tail);
    return std::max(mu + sigma * z, min);
}

User sample_user(RngStream& stream, const SamplingParams& params) {
    const auto& c = params.coeffs;
    User u;
    u.a = stream.uniform();
    u.budget_low = sample_truncated_normal(stream, c.mu_l * params.p_l_max,
                                           c.sigma_l * params.p_l_max, params.min_budget);
    const double benchmark = params.qos.ratio() * u.budget_low;
    u.budget_high =
        sample_truncated_normal(stream, c.mu_h * benchmark, c.sigma_h * benchmark, u.budget_low);
    return u;
}

Population sample_population(RngStream& stream, std::size_t n, const SamplingParams& params) {
    if (n == 0) throw std::domain_error("population size must be at least 1");
    Population pop;
    pop.users.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pop.users.push_back(sample_user(stream, params));
    pop.order.resize(n);
    for (std::size_t i = 0; i < n; ++i) pop.order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(stream.below(i + 1));
        std::swap(pop.order[i], pop.order[j]);
    }
    return pop;
}

std::size_t population_size_rule(const TechCase& tech) {
    return static_cast<std::size_t>(tech.n_l + tech.n_h);
}

}  // namespace lsa
