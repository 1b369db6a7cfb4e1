#include "lsa/report.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "lsa/config.hpp"
#include "lsa/rng.hpp"

namespace lsa {

namespace {

std::string mean2(std::int64_t sum, std::int64_t reps) { return format_ratio(sum, reps, 2); }
std::string mean3(std::int64_t sum, std::int64_t reps) { return format_ratio(sum, reps, 3); }

void point_columns(std::ostringstream& os, const GridPoint& p) {
    os << p.p_low.value << ',' << p.k << ',' << p.p_high().value;
}

}  // namespace

std::string render_sweep_csv(const SweepSurface& surface) {
    std::ostringstream os;
    os << kSweepHeader << '\n';
    for (const GridStatistics& s : surface.points) {
        os << to_string(s.scenario) << ',';
        point_columns(os, s.point);
        os << ',' << mean2(s.sum_revenue, s.reps) << ',' << format_fixed(s.sd_revenue(), 2) << ','
           << mean3(s.sum_n_low, s.reps) << ',' << mean3(s.sum_n_high, s.reps) << '\n';
    }
    return os.str();
}

std::string render_budget_sweep_csv(std::span<const BudgetSweepRow> rows) {
    std::ostringstream os;
    os << kBudgetSweepHeader << '\n';
    for (const BudgetSweepRow& r : rows) {
        const GridStatistics& s = r.max.stats;
        os << r.budget_scenario << ',' << r.tech_case << ',' << to_string(r.mode) << ','
           << to_string(r.max.scenario) << ',';
        point_columns(os, r.max.point);
        os << ',' << mean2(s.sum_revenue, s.reps) << ',' << mean3(s.sum_n_low, s.reps) << ','
           << mean3(s.sum_n_high, s.reps) << '\n';
    }
    return os.str();
}

std::string render_comparison_csv(std::span<const ModeComparison> comparisons) {
    std::ostringstream os;
    os << kComparisonHeader << '\n';
    for (const ModeComparison& c : comparisons) {
        for (std::size_t i = 0; i < c.nonstrict.points.size(); ++i) {
            const GridStatistics& ns = c.nonstrict.points[i];
            const GridStatistics& st = c.strict.points[i];
            os << c.budget_scenario << ',' << c.tech_case << ',' << to_string(ns.scenario) << ',';
            point_columns(os, ns.point);
            os << ',' << mean2(ns.sum_revenue, ns.reps) << ',' << mean2(st.sum_revenue, st.reps)
               << ',' << mean2(ns.sum_revenue - st.sum_revenue, ns.reps) << ','
               << mean3(ns.sum_n_low, ns.reps) << ',' << mean3(ns.sum_n_high, ns.reps) << ','
               << mean3(st.sum_n_low, st.reps) << ',' << mean3(st.sum_n_high, st.reps) << '\n';
        }
    }
    return os.str();
}

std::string render_comparison_max_csv(std::span<const ModeComparison> comparisons) {
    std::ostringstream os;
    os << kComparisonMaxHeader << '\n';
    for (const ModeComparison& c : comparisons) {
        for (std::size_t i = 0; i < kAllScenarios.size(); ++i) {
            for (const auto* m : {&c.max_nonstrict[i], &c.max_strict[i]}) {
                const bool strict = m == &c.max_strict[i];
                const GridStatistics& s = m->stats;
                os << c.budget_scenario << ',' << c.tech_case << ',' << to_string(m->scenario) << ','
                   << (strict ? "strict" : "nonstrict") << ',';
                point_columns(os, m->point);
                os << ',' << mean2(s.sum_revenue, s.reps) << ',' << mean3(s.sum_n_low, s.reps)
                   << ',' << mean3(s.sum_n_high, s.reps) << ',' << c.dominance_violations << '\n';
            }
        }
    }
    return os.str();
}

std::filesystem::path write_text_file(const std::filesystem::path& out_dir, std::string_view name,
                                      std::string_view content) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
    return path;
}

std::filesystem::path emit_sweep_csv(const SweepSurface& surface,
                                     const std::filesystem::path& out_dir) {
    const std::string name = "sweep_bs" + std::to_string(surface.budget_scenario) + "_" +
                             surface.tech_case + "_" + std::string(to_string(surface.mode)) + ".csv";
    return write_text_file(out_dir, name, render_sweep_csv(surface));
}

std::filesystem::path emit_budget_sweep_csv(std::span<const BudgetSweepRow> rows,
                                            const std::filesystem::path& out_dir) {
    return write_text_file(out_dir, "budget_sweep.csv", render_budget_sweep_csv(rows));
}

std::vector<std::filesystem::path> emit_comparison_csv(std::span<const ModeComparison> comparisons,
                                                       const std::filesystem::path& out_dir) {
    return {write_text_file(out_dir, "comparison.csv", render_comparison_csv(comparisons)),
            write_text_file(out_dir, "comparison_max.csv", render_comparison_max_csv(comparisons))};
}

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 0xf];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

nlohmann::json make_manifest(std::string_view command, const ExperimentConfig& config,
                             std::span<const std::filesystem::path> files) {
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& f : files) digests[f.filename().string()] = sha256_file(f);
    nlohmann::json cfg = config_to_json(config);
    // Thread count never changes results.
    cfg.erase("threads");
    return {
        {"tool", "lsa_market"},
        {"tool_version", std::string(kToolVersion)},
        {"command", std::string(command)},
        {"seed", config.seed},
        {"prng", kPrngName},
        {"config", cfg},
        {"files", digests},
    };
}

std::filesystem::path write_manifest(const nlohmann::json& manifest,
                                     const std::filesystem::path& out_dir) {
    return write_text_file(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace lsa
