#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lsa/experiments.hpp"

namespace lsa {

inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr std::string_view kSweepHeader =
    "scenario,p_low_cents,k,p_high_cents,mean_revenue_cents,sd_revenue_cents,mean_n_low,mean_n_high";
inline constexpr std::string_view kBudgetSweepHeader =
    "budget_scenario,tech_case,mode,qos_scenario,p_low_cents,k,p_high_cents,mean_revenue_cents,"
    "mean_n_low,mean_n_high";
inline constexpr std::string_view kComparisonHeader =
    "budget_scenario,tech_case,qos_scenario,p_low_cents,k,p_high_cents,"
    "mean_revenue_nonstrict_cents,mean_revenue_strict_cents,delta_revenue_cents,"
    "mean_n_low_nonstrict,mean_n_high_nonstrict,mean_n_low_strict,mean_n_high_strict";
inline constexpr std::string_view kComparisonMaxHeader =
    "budget_scenario,tech_case,qos_scenario,mode,p_low_cents,k,p_high_cents,mean_revenue_cents,"
    "mean_n_low,mean_n_high,dominance_violations";

// Rendering: LF line endings, one header row, money in cents (means with two
// decimals), user counts with three decimals.
std::string render_sweep_csv(const SweepSurface& surface);
std::string render_budget_sweep_csv(std::span<const BudgetSweepRow> rows);
/// One row per (cell, scenario, grid point) with the NonStrict - Strict delta.
std::string render_comparison_csv(std::span<const ModeComparison> comparisons);
/// Paired revenue maxima, one row per (cell, scenario, mode).
std::string render_comparison_max_csv(std::span<const ModeComparison> comparisons);

/// Writes `content` to out_dir/name (creating out_dir) and returns the path.
/// Throws std::runtime_error when the file cannot be written.
std::filesystem::path write_text_file(const std::filesystem::path& out_dir, std::string_view name,
                                      std::string_view content);

std::filesystem::path emit_sweep_csv(const SweepSurface& surface,
                                     const std::filesystem::path& out_dir);
std::filesystem::path emit_budget_sweep_csv(std::span<const BudgetSweepRow> rows,
                                            const std::filesystem::path& out_dir);
/// Writes comparison.csv and comparison_max.csv.
std::vector<std::filesystem::path> emit_comparison_csv(std::span<const ModeComparison> comparisons,
                                                       const std::filesystem::path& out_dir);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Tool version, seed, PRNG name, resolved config and a digest per file.
nlohmann::json make_manifest(std::string_view command, const ExperimentConfig& config,
                             std::span<const std::filesystem::path> files);
std::filesystem::path write_manifest(const nlohmann::json& manifest,
                                     const std::filesystem::path& out_dir);

}  // namespace lsa
