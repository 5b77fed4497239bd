#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rowsketch/matrix.hpp"
#include "rowsketch/matrix_io.hpp"

namespace rowsketch {

enum class Task { gram, product, lowrank, regress, leverage, spectral, bounds };

std::string task_name(Task task);
Task parse_task(const std::string& name);

// Synthetic-input request: "m,d,s1:s2:...:sd,uniform" or "...,planted:t".
struct GenerateSpec {
    std::size_t m = 0;
    std::size_t d = 0;
    std::vector<double> spectrum;
    bool planted = false;
    std::size_t planted_row = 0;
};

GenerateSpec parse_generate_spec(const std::string& text);

struct ExperimentConfig {
    Task task = Task::gram;
    double epsilon = 0.5;
    double delta = 0.1;
    double beta = 1.0;
    std::size_t k = 1;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::optional<std::size_t> r_override;
    std::string input_path;
    std::string input_b_path;
    std::string generate;    // generator spec for A
    std::string generate_b;  // generator spec for B
    MatrixFormat format = MatrixFormat::matrix_market;
    std::string out_path;
    std::string csv_path;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    std::size_t r_used = 0;
    double error = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool numerical_failure = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string bound_target;  // which guarantee the bound column encodes
    bool guaranteed = true;    // false under --r-override
    std::vector<TrialRecord> records;
    std::size_t failures = 0;
    double failure_rate = 0.0;
    std::size_t numerical_failures = 0;
    double wall_clock_seconds = 0.0;
};

// Runs config.trials independent seeded trials of the selected task, each
// scored against the exact dense oracles. Per-trial numerical failures are
// recorded, not fatal.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// JSON with stable key ordering; optionally a per-trial CSV next to it.
void emit_report(const ExperimentReport& rep, const std::string& path);
void emit_report_csv(const ExperimentReport& rep, const std::string& path);
ExperimentReport load_report(const std::string& path);
std::string report_to_json_text(const ExperimentReport& rep);

// Exit codes surfaced by the CLI: 0 success, 2 invalid input or config,
// 3 when more than 10% of trials failed numerically.
int report_exit_code(const ExperimentReport& rep);

}  // namespace rowsketch
