#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lsa/config.hpp"
#include "lsa/report.hpp"

using namespace lsa;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("lsa_tests_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cols.push_back(cell);
        rows.push_back(cols);
    }
    return rows;
}

// "1234.567" -> 1234567 with `decimals` fractional digits.
std::int64_t fixed_to_int(const std::string& s, int decimals) {
    const auto dot = s.find('.');
    REQUIRE(dot != std::string::npos);
    REQUIRE(static_cast<int>(s.size() - dot - 1) == decimals);
    return std::stoll(s.substr(0, dot) + s.substr(dot + 1));
}

}  // namespace

TEST_CASE("load_config defaults reproduce the reference setup") {
    const ExperimentConfig c = load_config(std::nullopt, {});
    CHECK(c.reps == 1000);
    CHECK(c.grid.p_low == std::vector<Cents>{Cents::from_dollars(30), Cents::from_dollars(60),
                                             Cents::from_dollars(90), Cents::from_dollars(120)});
    CHECK(c.grid.k_min == 2);
    CHECK(c.grid.k_max == 30);
    CHECK(c.min_budget == 10.0);
    CHECK(c.p_l_max == 120.0);
    CHECK(c.budget_scenarios.size() == 36);
    CHECK(c.tech_cases == std::vector<std::string>{"800-indoor", "800-outdoor", "3800-indoor"});
    CHECK(c.modes.size() == 2);

    const auto dir = temp_dir("empty");
    const ExperimentConfig e = load_config(write_file(dir, "empty.json", "{}"), {});
    CHECK(config_to_json(e) == config_to_json(c));
    const ExperimentConfig blank = load_config(write_file(dir, "blank.json", "\n"), {});
    CHECK(config_to_json(blank) == config_to_json(c));
}

TEST_CASE("command-line overrides win over the file") {
    const auto dir = temp_dir("override");
    const auto path = write_file(dir, "c.json", R"({"reps": 50, "seed": 9, "modes": "strict"})");
    ConfigOverrides o;
    o.reps = 200;
    const ExperimentConfig c = load_config(path, o);
    CHECK(c.reps == 200);
    CHECK(c.seed == 9);
    CHECK(c.modes == std::vector<AdmissionMode>{AdmissionMode::Strict});
    o.mode = "both";
    o.p_low_dollars = {45};
    const ExperimentConfig d = load_config(path, o);
    CHECK(d.modes.size() == 2);
    CHECK(d.grid.p_low == std::vector<Cents>{Cents::from_dollars(45)});
}

TEST_CASE("config errors name the offending key") {
    const auto dir = temp_dir("errors");
    auto message = [&](const std::string& json, const ConfigOverrides& o = {}) {
        try {
            load_config(write_file(dir, "bad.json", json), o);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"price_grid": {"k_max": 31}})").rfind("price_grid", 0) == 0);
    CHECK(message(R"({"price_grid": {"kmax": 3}})").rfind("price_grid.kmax", 0) == 0);
    CHECK(message(R"({"repz": 3})").rfind("repz", 0) == 0);
    CHECK(message(R"({"reps": 0})").rfind("reps", 0) == 0);
    CHECK(message(R"({"reps": "many"})").rfind("reps", 0) == 0);
    CHECK(message(R"({"budget_scenarios": [0]})").rfind("budget_scenarios", 0) == 0);
    CHECK(message(R"({"tech_cases": ["9999-indoor"]})").rfind("tech_cases", 0) == 0);
    CHECK(message(R"({"price_grid": {"p_low": [30.001]}})").rfind("price_grid.p_low[0]", 0) == 0);
    CHECK(message(R"({"qos": {"q_low_bps": 10, "q_high_bps": 5}})").rfind("qos", 0) == 0);
    CHECK(message("{ not json").find("malformed JSON") != std::string::npos);
    ConfigOverrides o;
    o.k_max = 31;
    CHECK(message("{}", o).rfind("price_grid", 0) == 0);
    CHECK_THROWS_AS(load_config(dir / "missing.json", {}), ConfigError);
}

TEST_CASE("coefficient overrides resize the scenario range") {
    const auto dir = temp_dir("coeffs");
    const auto c = load_config(write_file(dir, "c.json", R"({"budget_coefficients": {"mu_l": [0.6]}})"), {});
    CHECK(c.budget_sets.scenario_count() == 12);
    CHECK(c.budget_scenarios.size() == 12);
}

TEST_CASE("sweep CSV schema and exact revenue round trip") {
    ExperimentConfig cfg;
    cfg.reps = 200;
    cfg.threads = 1;
    const SweepSurface s = run_monte_carlo(cfg, 21, find_tech_case("3800-indoor"), AdmissionMode::NonStrict);
    const std::string csv = render_sweep_csv(s);
    CHECK(csv.find('\r') == std::string::npos);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 1 + 3 * 116);
    CHECK(csv.substr(0, csv.find('\n')) == kSweepHeader);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        REQUIRE(r.size() == 8);
        const std::int64_t p_low = std::stoll(r[1]);
        const std::int64_t k = std::stoll(r[2]);
        const std::int64_t p_high = std::stoll(r[3]);
        CHECK(p_high == k * p_low);
        // mean revenue (1/100 cent) * 10 == n_low (1/1000) * p_low + n_high (1/1000) * p_high
        const std::int64_t revenue_milli = fixed_to_int(r[4], 2) * 10;
        const std::int64_t recomputed = fixed_to_int(r[6], 3) * p_low + fixed_to_int(r[7], 3) * p_high;
        CHECK(revenue_milli == recomputed);
    }
}

TEST_CASE("budget sweep and comparison CSV schemas") {
    ExperimentConfig cfg;
    cfg.reps = 8;
    cfg.threads = 1;
    cfg.budget_scenarios = {1, 2};
    cfg.tech_cases = {"800-outdoor"};
    const auto rows = run_budget_sweep(cfg);
    const auto bs = parse_csv(render_budget_sweep_csv(rows));
    CHECK(render_budget_sweep_csv(rows).substr(0, kBudgetSweepHeader.size()) == kBudgetSweepHeader);
    REQUIRE(bs.size() == 1 + 2 * 2 * 3);
    CHECK(bs[1][0] == "1");
    CHECK(bs[1][1] == "800-outdoor");
    CHECK(bs[1][2] == "nonstrict");
    CHECK(bs[1][3] == "low");

    const auto cmps = run_mode_comparison(cfg);
    const std::string text = render_comparison_csv(cmps);
    CHECK(text.substr(0, kComparisonHeader.size()) == kComparisonHeader);
    const auto cr = parse_csv(text);
    REQUIRE(cr.size() == 1 + 2 * 3 * 116);
    const auto& header = cr[0];
    const auto delta_col = static_cast<std::size_t>(
        std::find(header.begin(), header.end(), "delta_revenue_cents") - header.begin());
    REQUIRE(delta_col < header.size());
    for (std::size_t i = 1; i < cr.size(); ++i) CHECK(std::stod(cr[i][delta_col]) >= 0.0);
    const auto mx = parse_csv(render_comparison_max_csv(cmps));
    CHECK(mx.size() == 1 + 2 * 3 * 2);
}

TEST_CASE("emitted files and manifest digests are reproducible") {
    ExperimentConfig cfg;
    cfg.reps = 20;
    cfg.budget_scenarios = {21};
    cfg.tech_cases = {"3800-indoor"};
    cfg.threads = 1;
    const auto dir_a = temp_dir("run_a");
    const auto dir_b = temp_dir("run_b");
    auto run = [&](const fs::path& dir, unsigned threads) {
        ExperimentConfig c = cfg;
        c.threads = threads;
        std::vector<fs::path> files{emit_budget_sweep_csv(run_budget_sweep(c), dir)};
        for (const auto& f : emit_comparison_csv(run_mode_comparison(c), dir)) files.push_back(f);
        const auto m = make_manifest("test", c, files);
        write_manifest(m, dir);
        return m;
    };
    const auto ma = run(dir_a, 1);
    const auto mb = run(dir_b, 3);
    CHECK(ma == mb);
    CHECK(ma["prng"] == "philox4x32-10");
    CHECK(ma["files"].size() == 3);
    CHECK(ma["files"]["budget_sweep.csv"] == sha256_file(dir_a / "budget_sweep.csv"));
    CHECK(sha256_file(dir_a / "comparison.csv") == sha256_file(dir_b / "comparison.csv"));

    // Re-running from the manifest's own config reproduces the digests.
    const ExperimentConfig again = config_from_json(ma["config"]);
    const auto dir_c = temp_dir("run_c");
    emit_budget_sweep_csv(run_budget_sweep(again), dir_c);
    CHECK(sha256_file(dir_c / "budget_sweep.csv") == ma["files"]["budget_sweep.csv"]);
}

TEST_CASE("sha256 known answer") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("format_ratio rounds half away from zero") {
    CHECK(format_ratio(1, 8, 2) == "0.13");
    CHECK(format_ratio(-1, 8, 2) == "-0.13");
    CHECK(format_ratio(2, 3, 3) == "0.667");
    CHECK(format_ratio(110259000, 1000, 2) == "110259.00");
    CHECK(format_ratio(7, 1, 0) == "7");
    CHECK(format_ratio(-1, 1000, 2) == "0.00");
}

TEST_CASE("unwritable output path is an error") {
    CHECK_THROWS_AS(write_text_file("/proc/definitely/not/here", "x.csv", "a"), std::runtime_error);
}
