#include "lsa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <functional>
#include <thread>

namespace lsa {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffU;
        h *= kFnvPrime;
    }
}

unsigned worker_count(const ExperimentConfig& config) {
    unsigned n = config.threads ? config.threads : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    return std::min<unsigned>(n, static_cast<unsigned>(config.reps));
}

std::vector<GridStatistics> empty_statistics(std::span<const GridPoint> grid) {
    std::vector<GridStatistics> out;
    out.reserve(kAllScenarios.size() * grid.size());
    for (QosScenario s : kAllScenarios) {
        for (const GridPoint& g : grid) {
            GridStatistics st;
            st.scenario = s;
            st.point = g;
            out.push_back(st);
        }
    }
    return out;
}

struct WorkerState {
    std::vector<std::vector<GridStatistics>> stats;  // per mode
    std::int64_t violations = 0;
    std::int64_t checks = 0;
};

std::array<MaxRevenueRecord, 3> max_per_scenario(const SweepSurface& surface) {
    std::array<MaxRevenueRecord, 3> out;
    for (std::size_t i = 0; i < kAllScenarios.size(); ++i) {
        out[i] = find_max(surface.points, kAllScenarios[i]);
    }
    return out;
}

}  // namespace

std::vector<int> ExperimentConfig::all_budget_scenarios() {
    std::vector<int> ids(kBudgetScenarioCount);
    for (int i = 0; i < kBudgetScenarioCount; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
    return ids;
}

void ExperimentConfig::validate() const {
    if (reps < 1) throw std::domain_error("reps: must be at least 1");
    try {
        qos.validate();
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string("qos: ") + e.what());
    }
    if (tech_cases.empty()) throw std::domain_error("tech_cases: must not be empty");
    for (const auto& id : tech_cases) find_tech_case(id);
    if (budget_scenarios.empty()) throw std::domain_error("budget_scenarios: must not be empty");
    for (int id : budget_scenarios) {
        if (id < 1 || id > budget_sets.scenario_count()) {
            throw std::domain_error("budget_scenarios: id " + std::to_string(id) +
                                    " outside [1, " +
                                    std::to_string(budget_sets.scenario_count()) + "]");
        }
    }
    if (modes.empty()) throw std::domain_error("modes: must not be empty");
    try {
        grid.validate(qos);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string("price_grid: ") + e.what());
    }
    if (population_size && *population_size < 1) {
        throw std::domain_error("population_size: must be at least 1");
    }
    if (!(p_l_max > 0.0)) throw std::domain_error("p_l_max: must be positive");
    if (!(min_budget >= 0.0)) throw std::domain_error("min_budget: must be non-negative");
}

RngStream replication_stream(const ExperimentConfig& config, int budget_scenario,
                             const TechCase& tech, int replication) {
    return RngStream(config.seed)
        .child(static_cast<std::uint64_t>(budget_scenario))
        .child(tech_case_index(tech.id))
        .child(static_cast<std::uint64_t>(replication));
}

Population sample_replication(const ExperimentConfig& config, int budget_scenario,
                              const TechCase& tech, int replication) {
    RngStream stream = replication_stream(config, budget_scenario, tech, replication);
    const SamplingParams params{budget_scenario_coefficients(budget_scenario, config.budget_sets),
                                config.qos, config.p_l_max, config.min_budget};
    const std::size_t n = config.population_size.value_or(population_size_rule(tech));
    Population pop = sample_population(stream, n, params);
    if (config.infinite_budgets) {
        for (User& u : pop.users) {
            u.budget_low = std::numeric_limits<double>::infinity();
            u.budget_high = std::numeric_limits<double>::infinity();
        }
    }
    return pop;
}

std::uint64_t population_digest(const Population& population) {
    std::uint64_t h = kFnvOffset;
    for (const User& u : population.users) {
        fnv_mix(h, std::bit_cast<std::uint64_t>(u.a));
        fnv_mix(h, std::bit_cast<std::uint64_t>(u.budget_low));
        fnv_mix(h, std::bit_cast<std::uint64_t>(u.budget_high));
    }
    for (std::size_t i : population.order) fnv_mix(h, i);
    return h;
}

std::span<const GridStatistics> SweepSurface::scenario(QosScenario s) const {
    const std::size_t per = points.size() / kAllScenarios.size();
    const auto idx = static_cast<std::size_t>(std::find(kAllScenarios.begin(), kAllScenarios.end(), s) -
                                              kAllScenarios.begin());
    return std::span<const GridStatistics>(points).subspan(idx * per, per);
}

CellResult simulate_cell(const ExperimentConfig& config, int budget_scenario,
                         const TechCase& tech, std::span<const AdmissionMode> modes) {
    config.validate();
    const std::vector<GridPoint> grid = config.grid.points();
    const auto ns_it = std::find(modes.begin(), modes.end(), AdmissionMode::NonStrict);
    const auto st_it = std::find(modes.begin(), modes.end(), AdmissionMode::Strict);
    const bool paired = ns_it != modes.end() && st_it != modes.end();
    const auto ns_idx = static_cast<std::size_t>(ns_it - modes.begin());
    const auto st_idx = static_cast<std::size_t>(st_it - modes.begin());

    const unsigned workers = worker_count(config);
    std::vector<WorkerState> states(workers);
    std::vector<std::uint64_t> digests(static_cast<std::size_t>(config.reps));
    std::atomic<int> next{0};

    auto work = [&](WorkerState& state) {
        state.stats.assign(modes.size(), empty_statistics(grid));
        std::vector<std::vector<RevenueRecord>> records(modes.size());
        for (int rep = next++; rep < config.reps; rep = next++) {
            const Population pop = sample_replication(config, budget_scenario, tech, rep);
            digests[static_cast<std::size_t>(rep)] = population_digest(pop);
            for (std::size_t m = 0; m < modes.size(); ++m) {
                records[m] = evaluate_grid(pop, grid, tech, config.qos, modes[m]);
                auto& acc = state.stats[m];
                for (std::size_t i = 0; i < acc.size(); ++i) acc[i].add(records[m][i]);
            }
            if (paired) {
                const auto& ns = records[ns_idx];
                const auto& st = records[st_idx];
                for (std::size_t i = 0; i < ns.size(); ++i) {
                    ++state.checks;
                    if (ns[i].revenue < st[i].revenue) ++state.violations;
                }
            }
        }
    };

    if (workers == 1) {
        work(states[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, std::ref(states[w]));
    }

    CellResult out;
    for (std::size_t m = 0; m < modes.size(); ++m) {
        SweepSurface surface;
        surface.budget_scenario = budget_scenario;
        surface.tech_case = std::string(tech.id);
        surface.mode = modes[m];
        surface.reps = config.reps;
        surface.points = empty_statistics(grid);
        for (const WorkerState& s : states) {
            if (s.stats.empty()) continue;
            for (std::size_t i = 0; i < surface.points.size(); ++i) {
                surface.points[i].merge(s.stats[m][i]);
            }
        }
        out.surfaces.push_back(std::move(surface));
    }
    for (const WorkerState& s : states) {
        out.dominance_violations += s.violations;
        out.dominance_checks += s.checks;
    }
    std::uint64_t h = kFnvOffset;
    for (std::uint64_t d : digests) fnv_mix(h, d);
    out.population_digest = h;
    return out;
}

SweepSurface run_monte_carlo(const ExperimentConfig& config, int budget_scenario,
                             const TechCase& tech, AdmissionMode mode) {
    const std::array<AdmissionMode, 1> modes{mode};
    return std::move(simulate_cell(config, budget_scenario, tech, modes).surfaces.front());
}

std::vector<BudgetSweepRow> run_budget_sweep(const ExperimentConfig& config,
                                             const ProgressFn& progress) {
    config.validate();
    std::vector<BudgetSweepRow> rows;
    for (int bs : config.budget_scenarios) {
        for (const auto& tech_id : config.tech_cases) {
            const TechCase& tech = find_tech_case(tech_id);
            const CellResult cell = simulate_cell(config, bs, tech, config.modes);
            for (const SweepSurface& surface : cell.surfaces) {
                for (const MaxRevenueRecord& m : max_per_scenario(surface)) {
                    rows.push_back({bs, tech_id, surface.mode, m});
                }
            }
            if (progress) {
                progress("budget scenario " + std::to_string(bs) + ", " + tech_id + " done");
            }
        }
    }
    return rows;
}

std::vector<ModeComparison> run_mode_comparison(const ExperimentConfig& config,
                                                const ProgressFn& progress) {
    config.validate();
    constexpr std::array<AdmissionMode, 2> modes{AdmissionMode::NonStrict, AdmissionMode::Strict};
    std::vector<ModeComparison> out;
    for (int bs : config.budget_scenarios) {
        for (const auto& tech_id : config.tech_cases) {
            const TechCase& tech = find_tech_case(tech_id);
            CellResult cell = simulate_cell(config, bs, tech, modes);
            ModeComparison cmp;
            cmp.budget_scenario = bs;
            cmp.tech_case = tech_id;
            cmp.nonstrict = std::move(cell.surfaces[0]);
            cmp.strict = std::move(cell.surfaces[1]);
            cmp.max_nonstrict = max_per_scenario(cmp.nonstrict);
            cmp.max_strict = max_per_scenario(cmp.strict);
            cmp.dominance_violations = cell.dominance_violations;
            cmp.dominance_checks = cell.dominance_checks;
            cmp.population_digest = cell.population_digest;
            out.push_back(std::move(cmp));
            if (progress) {
                progress("budget scenario " + std::to_string(bs) + ", " + tech_id + " done");
            }
        }
    }
    return out;
}

}  // namespace lsa
