#include "lsa/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lsa/experiments.hpp"
#include "lsa/sampling.hpp"

namespace lsa {

namespace {

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
double std_normal_upper(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace

Cents capacity_revenue(const TechCase& tech, QosScenario scenario, const GridPoint& point) {
    const std::int64_t pl = point.p_low.value;
    const std::int64_t k = point.k;
    switch (scenario) {
        case QosScenario::Low: return Cents{tech.n_l * pl};
        case QosScenario::High: return Cents{tech.n_h * k * pl};
        case QosScenario::Mixed: return Cents{tech.n_lm * pl + tech.n_hm * k * pl};
    }
    return {};
}

bool admission_is_valid(const AdmissionResult& result, std::span<const User> users,
                        const Prices& prices, ScenarioCapacities caps) {
    std::vector<int> seen(users.size(), 0);
    for (const auto* set : {&result.admitted_low, &result.admitted_high, &result.rejected}) {
        for (std::size_t i : *set) {
            if (i >= users.size()) return false;
            ++seen[i];
        }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) return false;
    if (static_cast<int>(result.admitted_low.size()) > caps.cap_low) return false;
    if (static_cast<int>(result.admitted_high.size()) > caps.cap_high) return false;
    for (std::size_t i : result.admitted_low) {
        if (users[i].budget_low < prices.p_low().dollars()) return false;
    }
    for (std::size_t i : result.admitted_high) {
        if (users[i].budget_high < prices.p_high().dollars()) return false;
    }
    return true;
}

CheckResult check_capacity_oracle(const PriceGrid& grid, int reps, std::uint64_t seed) {
    CheckResult r{"capacity oracle (infinite budgets, non-strict)", true, {}};
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.reps = reps;
    cfg.grid = grid;
    cfg.infinite_budgets = true;
    cfg.threads = 1;
    int mismatches = 0;
    int points = 0;
    for (const TechCase& tech : tech_cases()) {
        const SweepSurface s = run_monte_carlo(cfg, 21, tech, AdmissionMode::NonStrict);
        for (const GridStatistics& p : s.points) {
            ++points;
            const Cents expected = capacity_revenue(tech, p.scenario, p.point);
            if (p.sum_revenue != expected.value * p.reps || p.sd_revenue() != 0.0) {
                if (mismatches++ == 0) {
                    std::ostringstream os;
                    os << "first mismatch: " << tech.id << ' ' << to_string(p.scenario) << " p_low="
                       << p.point.p_low.value << " k=" << p.point.k << " mean=" << p.mean_revenue()
                       << " expected=" << expected.value;
                    r.detail = os.str();
                }
            }
        }
    }
    r.passed = mismatches == 0;
    if (r.passed) r.detail = std::to_string(points) + " grid points exact";
    return r;
}

CheckResult check_exhaustive_dominance() {
    CheckResult r{"exhaustive non-strict >= strict class counts (<= 4 users)", true, {}};
    std::vector<User> lattice;
    for (double a : {0.1, 0.9}) {
        for (double bl : {20.0, 100.0}) {
            for (double bh : {100.0, 1000.0}) lattice.push_back({a, bl, bh});
        }
    }
    const std::vector<Prices> prices{Prices(Cents::from_dollars(30), 2),
                                     Prices(Cents::from_dollars(30), 10),
                                     Prices(Cents::from_dollars(60), 5)};
    const QosProfile qos;
    long cases = 0;
    long failures = 0;
    std::vector<User> users;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= lattice.size();
        users.resize(n);
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                users[i] = lattice[c % lattice.size()];
                c /= lattice.size();
            }
            for (const Prices& p : prices) {
                for (int cl = 0; cl <= 2; ++cl) {
                    for (int ch = 0; ch <= 2; ++ch) {
                        const ScenarioCapacities caps{cl, ch};
                        const auto ns = admit_market(users, p, caps, qos, AdmissionMode::NonStrict);
                        const auto st = admit_market(users, p, caps, qos, AdmissionMode::Strict);
                        ++cases;
                        const bool ok = ns.admitted_low.size() >= st.admitted_low.size() &&
                                        ns.admitted_high.size() >= st.admitted_high.size() &&
                                        revenue_of(ns, p) >= revenue_of(st, p) &&
                                        admission_is_valid(ns, users, p, caps) &&
                                        admission_is_valid(st, users, p, caps);
                        if (!ok) ++failures;
                    }
                }
            }
        }
    }
    r.passed = failures == 0;
    r.detail = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures";
    return r;
}

CheckResult check_admission_invariants(std::uint64_t seed, int trials) {
    CheckResult r{"admission partition/capacity/budget invariants", true, {}};
    RngStream rng(seed, 0xad);
    const QosProfile qos;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t n = 1 + rng.below(60);
        std::vector<User> users(n);
        for (User& u : users) {
            u.a = rng.uniform();
            u.budget_low = 10.0 + 150.0 * rng.uniform();
            u.budget_high = u.budget_low + 4000.0 * rng.uniform();
        }
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        const Prices p(Cents::from_dollars(10 + static_cast<std::int64_t>(rng.below(111))),
                       2 + static_cast<int>(rng.below(29)), qos);
        const ScenarioCapacities caps{static_cast<int>(rng.below(40)), static_cast<int>(rng.below(8))};
        for (AdmissionMode mode : {AdmissionMode::NonStrict, AdmissionMode::Strict}) {
            const auto res = admit_market(users, order, p, caps, qos, mode);
            const auto counts = admit_counts(users, order, p, caps, qos, mode);
            if (!admission_is_valid(res, users, p, caps) ||
                counts.n_low != static_cast<int>(res.admitted_low.size()) ||
                counts.n_high != static_cast<int>(res.admitted_high.size())) {
                ++failures;
            }
        }
    }
    r.passed = failures == 0;
    r.detail = std::to_string(trials) + " random markets, " + std::to_string(failures) + " failures";
    return r;
}

CheckResult check_truncated_normal_moments(std::uint64_t seed, std::size_t draws, double mu,
                                           double sigma, double min, double rel_tol) {
    CheckResult r{"truncated-normal moments", true, {}};
    const double alpha = (min - mu) / sigma;
    const double lambda = std_normal_pdf(alpha) / std_normal_upper(alpha);
    const double mean = mu + sigma * lambda;
    const double var = sigma * sigma * (1.0 + alpha * lambda - lambda * lambda);

    RngStream rng(seed, 0x7e);
    double m = 0.0;
    double m2 = 0.0;
    bool bound_ok = true;
    for (std::size_t i = 0; i < draws; ++i) {
        const double x = sample_truncated_normal(rng, mu, sigma, min);
        bound_ok = bound_ok && x >= min;
        const double d = x - m;
        m += d / static_cast<double>(i + 1);
        m2 += d * (x - m);
    }
    const double sample_var = m2 / static_cast<double>(draws - 1);
    const double mean_err = std::fabs(m - mean) / std::fabs(mean);
    const double var_err = std::fabs(sample_var - var) / var;
    r.passed = bound_ok && mean_err <= rel_tol && var_err <= rel_tol;
    std::ostringstream os;
    os << "mu=" << mu << " sigma=" << sigma << " min=" << min << ": mean " << m << " vs " << mean
       << " (rel " << mean_err << "), var " << sample_var << " vs " << var << " (rel " << var_err
       << ")" << (bound_ok ? "" : ", bound violated");
    r.detail = os.str();
    return r;
}

CheckResult check_preference_monotonicity() {
    CheckResult r{"w_H strictly decreasing in a and k", true, {}};
    const QosProfile qos;
    int failures = 0;
    for (std::int64_t pl : {10, 30, 60, 90, 120}) {
        for (int k = 2; k <= 30; ++k) {
            const Prices p(Cents::from_dollars(pl), k, qos);
            double prev = 2.0;
            for (int i = 1; i < 100; ++i) {
                const double w = preference_weight_high(i / 100.0, p, qos);
                if (!(w < prev) || !(w > 0.0 && w < 1.0)) ++failures;
                prev = w;
            }
        }
        for (int i = 1; i < 100; ++i) {
            double prev = 2.0;
            for (int k = 2; k <= 30; ++k) {
                const double w = preference_weight_high(i / 100.0, Prices(Cents::from_dollars(pl), k, qos), qos);
                if (!(w < prev)) ++failures;
                prev = w;
            }
        }
    }
    r.passed = failures == 0;
    r.detail = std::to_string(failures) + " violations";
    return r;
}

std::vector<CheckResult> run_quick_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(check_capacity_oracle(PriceGrid{}, 5, seed));
    out.push_back(check_exhaustive_dominance());
    out.push_back(check_admission_invariants(seed, 2000));
    out.push_back(check_truncated_normal_moments(seed, 1'000'000, 84.0, 48.0, 10.0, 0.01));
    out.push_back(check_preference_monotonicity());
    return out;
}

}  // namespace lsa
