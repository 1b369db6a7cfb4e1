#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "lsa/sampling.hpp"
#include "lsa/validation.hpp"

using namespace lsa;

namespace {

// Closed-form lower-truncated normal moments, independent of the sampler.
struct TruncatedMoments {
    double mean;
    double var;
};

TruncatedMoments lower_truncated_moments(double mu, double sigma, double min) {
    const double alpha = (min - mu) / sigma;
    const double pdf = std::exp(-0.5 * alpha * alpha) / std::sqrt(2 * std::numbers::pi);
    const double tail = 0.5 * std::erfc(alpha / std::sqrt(2.0));
    const double lambda = pdf / tail;
    return {mu + sigma * lambda, sigma * sigma * (1 + alpha * lambda - lambda * lambda)};
}

}  // namespace

TEST_CASE("budget scenario enumeration follows the loop nest") {
    CHECK(budget_scenario_coefficients(1) == BudgetCoefficients{0.5, 0.2, 0.2, 0.2});
    CHECK(budget_scenario_coefficients(6) == BudgetCoefficients{0.5, 0.2, 0.6, 0.4});
    CHECK(budget_scenario_coefficients(21) == BudgetCoefficients{0.7, 0.4, 0.4, 0.2});
    CHECK(budget_scenario_coefficients(36) == BudgetCoefficients{0.9, 0.4, 0.6, 0.4});
    CHECK_THROWS_AS(budget_scenario_coefficients(0), std::domain_error);
    CHECK_THROWS_AS(budget_scenario_coefficients(37), std::domain_error);
}

TEST_CASE("budget scenario ids are a bijection onto coefficient tuples") {
    const BudgetCoefficientSets sets;
    int id = 1;
    for (double ml : sets.mu_l) {
        for (double sl : sets.sigma_l) {
            for (double mh : sets.mu_h) {
                for (double sh : sets.sigma_h) {
                    CHECK(budget_scenario_coefficients(id++) == BudgetCoefficients{ml, sl, mh, sh});
                }
            }
        }
    }
    CHECK(id == 37);
}

TEST_CASE("truncated normal: bound, degenerate sigma") {
    RngStream s(17);
    for (int i = 0; i < 100000; ++i) REQUIRE(sample_truncated_normal(s, 20, 30, 10) >= 10);
    CHECK(sample_truncated_normal(s, 84, 0, 10) == 84);
    CHECK(sample_truncated_normal(s, 5, 0, 10) == 10);
}

TEST_CASE("truncated normal mean matches closed form within 0.5% at 1e6 draws") {
    RngStream s(4242);
    const auto m = lower_truncated_moments(84, 48, 10);
    double sum = 0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += sample_truncated_normal(s, 84, 48, 10);
    CHECK(std::fabs(sum / n - m.mean) / m.mean < 0.005);
}

TEST_CASE("truncated normal moments within 1% (library check)") {
    const auto r = check_truncated_normal_moments(31337, 1'000'000, 84, 48, 10, 0.01);
    INFO(r.detail);
    CHECK(r.passed);
    // Heavier truncation of the B_H shape: min above the mean.
    const auto h = check_truncated_normal_moments(31338, 1'000'000, 369, 369, 400, 0.01);
    INFO(h.detail);
    CHECK(h.passed);
}

TEST_CASE("truncated normal inverse-CDF tail path") {
    // P(X >= 10) for N(0, 2) is ~2.9e-7, far below the rejection floor.
    RngStream s(8);
    const auto m = lower_truncated_moments(0, 2, 10);
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = sample_truncated_normal(s, 0, 2, 10);
        REQUIRE(x >= 10);
        sum += x;
    }
    // Tail SD is ~0.37; SE of the mean ~8e-4.
    CHECK(sum / n == doctest::Approx(m.mean).epsilon(1e-3));
}

TEST_CASE("sample_user respects the truncation chain") {
    RngStream s(23);
    SamplingParams params;
    for (int id = 1; id <= kBudgetScenarioCount; ++id) {
        params.coeffs = budget_scenario_coefficients(id);
        for (int i = 0; i < 2000; ++i) {
            const User u = sample_user(s, params);
            REQUIRE(u.valid(10.0));
        }
    }
}

TEST_CASE("sample_user with degenerate sigmas") {
    RngStream s(1);
    SamplingParams params;
    params.coeffs = {0.5, 0.0, 0.2, 0.0};
    const User u = sample_user(s, params);
    CHECK(u.budget_low == 60.0);
    CHECK(u.budget_high == doctest::Approx(0.2 * (4.61e6 / 150e3) * 60.0));
    CHECK(u.budget_high == doctest::Approx(368.8));
    CHECK(u.a > 0.0);
    CHECK(u.a < 1.0);
}

TEST_CASE("preference trait stays in (0, 1)") {
    RngStream s(2);
    SamplingParams params;
    params.coeffs = {0.5, 0.0, 0.2, 0.0};
    for (int i = 0; i < 1'000'000; ++i) {
        const User u = sample_user(s, params);
        REQUIRE(u.a > 0.0);
        REQUIRE(u.a < 1.0);
    }
}

TEST_CASE("populations: size, permutation, determinism") {
    SamplingParams params;
    params.coeffs = budget_scenario_coefficients(21);
    RngStream s1(77), s2(77);
    const Population a = sample_population(s1, 41, params);
    const Population b = sample_population(s2, 41, params);
    REQUIRE(a.users.size() == 41);
    REQUIRE(a.order.size() == 41);
    std::vector<std::size_t> sorted = a.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    for (std::size_t i = 0; i < 41; ++i) {
        CHECK(a.users[i].a == b.users[i].a);
        CHECK(a.users[i].budget_low == b.users[i].budget_low);
        CHECK(a.users[i].budget_high == b.users[i].budget_high);
    }
    CHECK(a.order == b.order);

    RngStream s3(1);
    const Population one = sample_population(s3, 1, params);
    CHECK(one.order == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(sample_population(s3, 0, params), std::domain_error);
}

TEST_CASE("degenerate sigmas make users identical except for a") {
    SamplingParams params;
    params.coeffs = {0.7, 0.0, 0.4, 0.0};
    RngStream s(3);
    const Population pop = sample_population(s, 20, params);
    for (const User& u : pop.users) {
        CHECK(u.budget_low == pop.users[0].budget_low);
        CHECK(u.budget_high == pop.users[0].budget_high);
    }
    CHECK(pop.users[0].a != pop.users[1].a);
}

TEST_CASE("population size rule") {
    CHECK(population_size_rule(find_tech_case("3800-indoor")) == 41);
    CHECK(population_size_rule(find_tech_case("800-indoor")) == 71);
    CHECK(population_size_rule(find_tech_case("800-outdoor")) == 9);
}
