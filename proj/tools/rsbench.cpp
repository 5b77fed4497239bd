// Benchmark harness: seeded Monte-Carlo runs of the sampling algorithms with
// per-trial comparison against the exact dense oracles.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rowsketch/experiment.hpp"
#include "rowsketch/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rowsketch benchmark harness"};

    std::string task_str;
    rowsketch::ExperimentConfig cfg;
    std::string format_str = "mm";
    std::int64_t r_override = -1;

    app.add_option("--task", task_str,
                   "experiment: gram|product|lowrank|regress|leverage|spectral|bounds")
        ->required();
    app.add_option("--input", cfg.input_path, "matrix A file");
    app.add_option("--input-b", cfg.input_b_path, "matrix B file (product) or target y (regress)");
    app.add_option("--generate", cfg.generate,
                   "synthesize A: 'm,d,s1:s2:...:sd,uniform' or '...,planted:t'");
    app.add_option("--generate-b", cfg.generate_b, "synthesize B (product)");
    app.add_option("--format", format_str, "input format: mm|csv")
        ->check(CLI::IsMember({"mm", "csv"}));
    app.add_option("--epsilon", cfg.epsilon, "error target in (0,1)");
    app.add_option("--delta", cfg.delta, "failure probability in (0,1)");
    app.add_option("--beta", cfg.beta, "probability slack in (0,1]");
    app.add_option("--k", cfg.k, "target rank (lowrank)");
    app.add_option("--trials", cfg.trials, "number of seeded trials");
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--r-override", r_override,
                   "bypass the sample-size formulas (report carries no guarantee)");
    app.add_option("--out", cfg.out_path, "JSON report path");
    app.add_option("--csv", cfg.csv_path, "optional per-trial CSV path");
    app.set_version_flag("--version", std::string(rowsketch::kLibraryVersion));

    try {
        app.parse(argc, argv);
        cfg.task = rowsketch::parse_task(task_str);
        cfg.format = format_str == "csv" ? rowsketch::MatrixFormat::csv
                                         : rowsketch::MatrixFormat::matrix_market;
        if (r_override >= 0) cfg.r_override = static_cast<std::size_t>(r_override);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const rowsketch::ExperimentReport report = rowsketch::run_experiment(cfg);
        if (!cfg.out_path.empty()) rowsketch::emit_report(report, cfg.out_path);
        if (!cfg.csv_path.empty()) rowsketch::emit_report_csv(report, cfg.csv_path);

        std::cout << rowsketch::task_name(cfg.task) << ": trials=" << report.records.size()
                  << " failures=" << report.failures << " failure_rate=" << report.failure_rate
                  << " numerical_failures=" << report.numerical_failures
                  << (report.guaranteed ? "" : " [no guarantee]") << "\n";
        return rowsketch::report_exit_code(report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
