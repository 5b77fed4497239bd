#include "rowsketch/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rowsketch/errors.hpp"
#include "rowsketch/generator.hpp"
#include "rowsketch/leverage_fjlt.hpp"
#include "rowsketch/low_rank.hpp"
#include "rowsketch/regression.hpp"
#include "rowsketch/rng.hpp"
#include "rowsketch/row_sampler.hpp"
#include "rowsketch/sketch_matmul.hpp"
#include "rowsketch/spectral_estimator.hpp"
#include "rowsketch/svd.hpp"
#include "rowsketch/tail_bounds.hpp"
#include "rowsketch/version.hpp"

namespace rowsketch {

namespace {

using ordered_json = nlohmann::ordered_json;

// Stream tags for deriving the fixed problem instance from the master seed.
constexpr std::uint64_t kStreamMatrixA = 0xA;
constexpr std::uint64_t kStreamMatrixB = 0xB;
constexpr std::uint64_t kStreamRegressX = 0xC;
constexpr std::uint64_t kStreamRegressNoise = 0xD;

DenseMatrix realize_input(const ExperimentConfig& cfg, bool b_side) {
    const std::string& path = b_side ? cfg.input_b_path : cfg.input_path;
    const std::string& gen = b_side ? cfg.generate_b : cfg.generate;
    if (!path.empty()) return load_matrix(path, cfg.format);
    if (!gen.empty()) {
        const GenerateSpec spec = parse_generate_spec(gen);
        return generate_matrix(spec.m, spec.d, spec.spectrum,
                               spec.planted ? CoherenceMode::planted : CoherenceMode::uniform,
                               spec.planted_row,
                               derive_seed(cfg.seed, b_side ? kStreamMatrixB : kStreamMatrixA));
    }
    throw std::invalid_argument(std::string("task needs --input") + (b_side ? "-b" : "") +
                                " or --generate" + (b_side ? "-b" : ""));
}

std::vector<double> regress_targets(const DenseMatrix& a, std::uint64_t master_seed) {
    Rng rng_x(derive_seed(master_seed, kStreamRegressX));
    std::vector<double> x0(a.cols());
    for (double& v : x0) v = rng_x.next_normal();
    std::vector<double> y = multiply_vec(a, x0);
    Rng rng_n(derive_seed(master_seed, kStreamRegressNoise));
    for (double& v : y) v += rng_n.next_normal();
    return y;
}

double theorem26_factor(double eps) {
    return 1.0 + eps + eps * std::sqrt((1.0 + eps) / (1.0 - eps));
}

// |Z_n| for a mean of n Rademacher signs, via popcount over the bit stream.
double rademacher_mean_abs(std::size_t n, Rng& rng) {
    long long sum = 0;
    std::size_t left = n;
    while (left >= 64) {
        sum += 2 * std::popcount(rng.next_u64()) - 64;
        left -= 64;
    }
    if (left > 0) {
        const std::uint64_t bits = rng.next_u64() & ((std::uint64_t{1} << left) - 1);
        sum += 2 * std::popcount(bits) - static_cast<long long>(left);
    }
    return std::abs(static_cast<double>(sum)) / static_cast<double>(n);
}

struct TaskContext {
    const ExperimentConfig& cfg;
    DenseMatrix a;
    DenseMatrix b;              // product only
    std::vector<double> y;      // regress only
    // Exact-oracle quantities shared across trials.
    double norm_a = 0.0;        // ||A||
    double norm_b = 0.0;
    DenseMatrix exact_product;  // A^T A or A^T B
    double best_rank_error = 0.0;
    double exact_objective = 0.0;
    double y_norm = 0.0;
};

TrialRecord run_gram_trial(const TaskContext& ctx, std::uint64_t trial_seed) {
    TrialRecord rec;
    rec.seed = trial_seed;
    if (ctx.cfg.r_override) {
        const SamplingDistribution dist = row_norm_probabilities(ctx.a);
        const RowSampleOperator op = draw_sample_operator(dist, *ctx.cfg.r_override, trial_seed);
        const DenseMatrix sketch = apply_sample(op, ctx.a);
        rec.r_used = *ctx.cfg.r_override;
        rec.error = spectral_norm_exact(subtract(ctx.exact_product, multiply_at_b(sketch, sketch)));
    } else {
        const ProductSketchResult res = approx_gram(ctx.a, ctx.cfg.epsilon, ctx.cfg.delta, trial_seed);
        rec.r_used = res.r_used;
        rec.error = spectral_norm_exact(subtract(ctx.exact_product, res.estimate));
    }
    rec.bound = ctx.cfg.epsilon * ctx.norm_a * ctx.norm_a;
    rec.pass = rec.error <= rec.bound;
    return rec;
}

TrialRecord run_product_trial(const TaskContext& ctx, std::uint64_t trial_seed) {
    TrialRecord rec;
    rec.seed = trial_seed;
    if (ctx.cfg.r_override) {
        const double lam_a2 = estimate_spectral_norm(ctx.a, ctx.cfg.delta / 4.0,
                                                     derive_seed(trial_seed, 1));
        const double lam_b2 = estimate_spectral_norm(ctx.b, ctx.cfg.delta / 4.0,
                                                     derive_seed(trial_seed, 2));
        const SamplingDistribution dist = combined_rescaled_probabilities(
            ctx.a, ctx.b, lam_a2, lam_b2, spectral_estimate_envelope_epsilon());
        const RowSampleOperator op =
            draw_sample_operator(dist, *ctx.cfg.r_override, derive_seed(trial_seed, 0));
        rec.r_used = *ctx.cfg.r_override;
        rec.error = spectral_norm_exact(subtract(
            ctx.exact_product, multiply_at_b(apply_sample(op, ctx.a), apply_sample(op, ctx.b))));
    } else {
        const ProductSketchResult res =
            approx_product(ctx.a, ctx.b, ctx.cfg.epsilon, ctx.cfg.delta, trial_seed);
        rec.r_used = res.r_used;
        rec.error = spectral_norm_exact(subtract(ctx.exact_product, res.estimate));
    }
    rec.bound = ctx.cfg.epsilon * ctx.norm_a * ctx.norm_b;
    rec.pass = rec.error <= rec.bound;
    return rec;
}

TrialRecord run_lowrank_trial(const TaskContext& ctx, std::uint64_t trial_seed) {
    TrialRecord rec;
    rec.seed = trial_seed;
    RankKProjector proj;
    if (ctx.cfg.r_override) {
        const SamplingDistribution dist = leverage_probabilities_exact(ctx.a);
        const RowSampleOperator op = draw_sample_operator(dist, *ctx.cfg.r_override, trial_seed);
        const SvdFactors f = svd(apply_sample(op, ctx.a));
        proj.k = std::min(ctx.cfg.k, f.rank());
        proj.v_k = left_columns(f.v, proj.k);
        proj.r_used = *ctx.cfg.r_override;
    } else {
        proj = sampled_projector(ctx.a, ctx.cfg.k, ReconstructionMode::relative, ctx.cfg.epsilon,
                                 ctx.cfg.delta, trial_seed);
    }
    rec.r_used = proj.r_used;
    rec.error = reconstruction_error(ctx.a, proj);
    rec.bound = std::sqrt((1.0 + ctx.cfg.epsilon) / (1.0 - ctx.cfg.epsilon)) * ctx.best_rank_error;
    // Exact-rank inputs: the theorem bound degenerates to the tolerance floor.
    if (rec.bound < 1e-8 * ctx.norm_a) rec.bound = 1e-8 * ctx.norm_a;
    rec.pass = rec.error <= rec.bound;
    return rec;
}

TrialRecord run_regress_trial(const TaskContext& ctx, std::uint64_t trial_seed) {
    TrialRecord rec;
    rec.seed = trial_seed;
    if (ctx.cfg.r_override) {
        const SamplingDistribution dist = regression_probabilities_exact(ctx.a, ctx.y);
        const RowSampleOperator op = draw_sample_operator(dist, *ctx.cfg.r_override, trial_seed);
        const std::vector<double> x =
            multiply_vec(pseudo_inverse(apply_sample(op, ctx.a)), apply_sample_vec(op, ctx.y));
        std::vector<double> fitted = multiply_vec(ctx.a, x);
        double sq = 0.0;
        for (std::size_t t = 0; t < ctx.y.size(); ++t) {
            const double r = ctx.y[t] - fitted[t];
            sq += r * r;
        }
        rec.r_used = *ctx.cfg.r_override;
        rec.error = std::sqrt(sq);
    } else {
        const RegressionSolution sol =
            sampled_least_squares(ctx.a, ctx.y, ctx.cfg.epsilon, ctx.cfg.delta, trial_seed);
        rec.r_used = sol.r_used.value_or(0);
        rec.error = sol.objective;
    }
    rec.bound = theorem26_factor(ctx.cfg.epsilon) * ctx.exact_objective;
    // Zero-residual instances must be solved to numerical exactness.
    if (ctx.exact_objective <= 1e-14 * ctx.y_norm) rec.bound = 1e-8 * ctx.y_norm;
    rec.pass = rec.error <= rec.bound;
    return rec;
}

TrialRecord run_spectral_trial(const TaskContext& ctx, std::uint64_t trial_seed) {
    TrialRecord rec;
    rec.seed = trial_seed;
    const double estimate = estimate_spectral_norm(ctx.a, ctx.cfg.delta, trial_seed);
    const double ratio = estimate / (ctx.norm_a * ctx.norm_a);
    const double lo = 1.0 / (2.0 * std::sqrt(5.0));
    // Normalized so that "inside the interval" reads error <= 1.
    rec.error = std::max(ratio / 1.5, lo / ratio);
    rec.bound = 1.0;
    rec.r_used = spectral_presample_size(ctx.a, ctx.cfg.delta);
    rec.pass = rec.error <= rec.bound;
    return rec;
}

TrialRecord run_leverage_trial(const TaskContext& ctx, std::uint64_t trial_seed) {
    TrialRecord rec;
    rec.seed = trial_seed;
    const LeverageEstimate est =
        estimate_leverage_probabilities(ctx.a, ctx.cfg.delta, trial_seed);
    const double d = static_cast<double>(ctx.a.cols());
    rec.r_used = build_fjlt(ctx.a.rows(), ctx.a.cols(), est.epsilon_used, ctx.cfg.delta,
                            trial_seed)
                     .r_target;
    rec.error = std::abs(est.sum_w_tilde / d - 1.0);
    rec.bound = kLeverageSumConstant * est.epsilon_used;
    rec.pass = rec.error <= rec.bound;
    return rec;
}

void run_bounds_task(const ExperimentConfig& cfg, ExperimentReport& report) {
    struct GridPoint {
        std::size_t n;
        double epsilon;
    };
    const GridPoint grid[] = {{50, 0.3}, {100, 0.2}, {200, 0.15}, {400, 0.1}, {800, 0.08}};
    const std::size_t trials = cfg.trials;

    for (std::size_t g = 0; g < std::size(grid); ++g) {
        const std::uint64_t sim_seed = derive_seed(cfg.seed, g);
        Rng rng(sim_seed);
        std::size_t exceed = 0;
        for (std::size_t t = 0; t < trials; ++t)
            if (rademacher_mean_abs(grid[g].n, rng) > grid[g].epsilon) ++exceed;
        const double empirical = static_cast<double>(exceed) / static_cast<double>(trials);

        BoundParams params;
        params.n = static_cast<std::int64_t>(grid[g].n);
        params.epsilon = grid[g].epsilon;
        params.gamma = 1.0;
        params.s2 = 1.0;  // Rademacher variance
        const double bounds[2] = {scalar_chernoff_bound(params), scalar_bernstein_bound(params)};
        for (double bound : bounds) {
            TrialRecord rec;
            rec.seed = sim_seed;
            rec.r_used = grid[g].n;
            rec.error = empirical;
            rec.bound = bound;
            const double slack =
                3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
            rec.pass = rec.error <= rec.bound + slack;
            report.records.push_back(rec);
        }
    }
    report.bound_target = "empirical tail of Rademacher means dominated by the scalar bounds";
}

ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["task"] = task_name(cfg.task);
    j["epsilon"] = cfg.epsilon;
    j["delta"] = cfg.delta;
    j["beta"] = cfg.beta;
    j["k"] = cfg.k;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    if (cfg.r_override)
        j["r_override"] = *cfg.r_override;
    else
        j["r_override"] = nullptr;
    j["input"] = cfg.input_path;
    j["input_b"] = cfg.input_b_path;
    j["generate"] = cfg.generate;
    j["generate_b"] = cfg.generate_b;
    j["format"] = cfg.format == MatrixFormat::matrix_market ? "mm" : "csv";
    j["out"] = cfg.out_path;
    j["csv"] = cfg.csv_path;
    return j;
}

ExperimentConfig config_from_json(const ordered_json& j) {
    ExperimentConfig cfg;
    cfg.task = parse_task(j.at("task").get<std::string>());
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.delta = j.at("delta").get<double>();
    cfg.beta = j.at("beta").get<double>();
    cfg.k = j.at("k").get<std::size_t>();
    cfg.trials = j.at("trials").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("r_override").is_null()) cfg.r_override = j.at("r_override").get<std::size_t>();
    cfg.input_path = j.at("input").get<std::string>();
    cfg.input_b_path = j.at("input_b").get<std::string>();
    cfg.generate = j.at("generate").get<std::string>();
    cfg.generate_b = j.at("generate_b").get<std::string>();
    cfg.format = j.at("format").get<std::string>() == "csv" ? MatrixFormat::csv
                                                            : MatrixFormat::matrix_market;
    cfg.out_path = j.at("out").get<std::string>();
    cfg.csv_path = j.at("csv").get<std::string>();
    return cfg;
}

}  // namespace

std::string task_name(Task task) {
    switch (task) {
        case Task::gram: return "gram";
        case Task::product: return "product";
        case Task::lowrank: return "lowrank";
        case Task::regress: return "regress";
        case Task::leverage: return "leverage";
        case Task::spectral: return "spectral";
        case Task::bounds: return "bounds";
    }
    return "unknown";
}

Task parse_task(const std::string& name) {
    if (name == "gram") return Task::gram;
    if (name == "product") return Task::product;
    if (name == "lowrank") return Task::lowrank;
    if (name == "regress") return Task::regress;
    if (name == "leverage") return Task::leverage;
    if (name == "spectral") return Task::spectral;
    if (name == "bounds") return Task::bounds;
    throw std::invalid_argument("unknown task '" + name + "'");
}

GenerateSpec parse_generate_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(part);
    if (parts.size() != 4)
        throw std::invalid_argument("generate spec must be 'm,d,s1:s2:...,uniform|planted:t'");

    GenerateSpec spec;
    try {
        spec.m = std::stoull(parts[0]);
        spec.d = std::stoull(parts[1]);
        std::stringstream sp(parts[2]);
        std::string val;
        while (std::getline(sp, val, ':')) spec.spectrum.push_back(std::stod(val));
    } catch (const std::exception&) {
        throw std::invalid_argument("generate spec: bad number in '" + text + "'");
    }
    if (parts[3] == "uniform") {
        spec.planted = false;
    } else if (parts[3].rfind("planted:", 0) == 0) {
        spec.planted = true;
        try {
            spec.planted_row = std::stoull(parts[3].substr(8));
        } catch (const std::exception&) {
            throw std::invalid_argument("generate spec: bad planted index in '" + text + "'");
        }
    } else {
        throw std::invalid_argument("generate spec: coherence must be 'uniform' or 'planted:t'");
    }
    return spec;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || cfg.epsilon >= 1.0 || !(cfg.delta > 0.0) || cfg.delta >= 1.0)
        throw std::invalid_argument("epsilon and delta must lie in (0, 1)");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");

    const auto t_start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = cfg;
    report.guaranteed = !cfg.r_override.has_value();

    if (cfg.task == Task::bounds) {
        run_bounds_task(cfg, report);
    } else {
        TaskContext ctx{cfg, realize_input(cfg, false), {}, {}, 0, 0, {}, 0, 0, 0};
        ctx.norm_a = spectral_norm_exact(ctx.a);
        switch (cfg.task) {
            case Task::gram:
                ctx.exact_product = multiply_at_b(ctx.a, ctx.a);
                report.bound_target = "||A^T A - A~^T A~|| <= eps ||A||^2";
                break;
            case Task::product:
                ctx.b = realize_input(cfg, true);
                ctx.norm_b = spectral_norm_exact(ctx.b);
                ctx.exact_product = multiply_at_b(ctx.a, ctx.b);
                report.bound_target = "||A^T B - A~^T B~|| <= eps ||A|| ||B||";
                break;
            case Task::lowrank: {
                if (cfg.k < 1 || cfg.k > ctx.a.cols())
                    throw std::invalid_argument("lowrank: k out of range");
                const DenseMatrix ak = best_rank_k(ctx.a, cfg.k);
                ctx.best_rank_error = spectral_norm_exact(subtract(ctx.a, ak));
                report.bound_target =
                    "||A - A Pi_k|| <= sqrt((1+eps)/(1-eps)) ||A - A_k||";
                break;
            }
            case Task::regress: {
                ctx.y = cfg.input_b_path.empty() && cfg.generate_b.empty()
                            ? regress_targets(ctx.a, cfg.seed)
                            : [&] {
                                  const DenseMatrix ym = realize_input(cfg, true);
                                  if (ym.cols() != 1 || ym.rows() != ctx.a.rows())
                                      throw std::invalid_argument(
                                          "regress: target must be an m x 1 matrix");
                                  return ym.data();
                              }();
                const RegressionSolution exact = exact_least_squares(ctx.a, ctx.y);
                ctx.exact_objective = exact.objective;
                ctx.y_norm = vector_norm(ctx.y);
                report.bound_target =
                    "||A x^ - y|| <= (1 + eps + eps sqrt((1+eps)/(1-eps))) ||A x* - y||";
                break;
            }
            case Task::spectral:
                report.bound_target =
                    "sigma~_1^2 within [||A||^2/(2 sqrt(5)), 1.5 ||A||^2] (normalized metric)";
                break;
            case Task::leverage:
                report.bound_target = "|sum w~_t - d| <= (1 + sqrt(7)) eps d";
                break;
            case Task::bounds:
                break;
        }

        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const std::uint64_t trial_seed = derive_seed(cfg.seed, t);
            TrialRecord rec;
            try {
                switch (cfg.task) {
                    case Task::gram: rec = run_gram_trial(ctx, trial_seed); break;
                    case Task::product: rec = run_product_trial(ctx, trial_seed); break;
                    case Task::lowrank: rec = run_lowrank_trial(ctx, trial_seed); break;
                    case Task::regress: rec = run_regress_trial(ctx, trial_seed); break;
                    case Task::spectral: rec = run_spectral_trial(ctx, trial_seed); break;
                    case Task::leverage: rec = run_leverage_trial(ctx, trial_seed); break;
                    case Task::bounds: break;
                }
            } catch (const numerical_error&) {
                rec = TrialRecord{trial_seed, 0, 0.0, 0.0, false, true};
            }
            report.records.push_back(rec);
        }
    }

    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const TrialRecord& x, const TrialRecord& y) { return x.seed < y.seed; });
    for (const TrialRecord& rec : report.records) {
        if (!rec.pass) ++report.failures;
        if (rec.numerical_failure) ++report.numerical_failures;
    }
    report.failure_rate =
        static_cast<double>(report.failures) / static_cast<double>(report.records.size());
    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    if (cfg.r_override)
        report.bound_target = "no guarantee (r overridden): " + report.bound_target;
    return report;
}

std::string report_to_json_text(const ExperimentReport& rep) {
    ordered_json j;
    j["library"] = ordered_json{{"name", kLibraryName}, {"version", kLibraryVersion}};
    j["config"] = config_to_json(rep.config);
    j["bound_target"] = rep.bound_target;
    j["guaranteed"] = rep.guaranteed;
    j["trials"] = rep.records.size();
    ordered_json records = ordered_json::array();
    for (const TrialRecord& rec : rep.records) {
        records.push_back(ordered_json{{"seed", rec.seed},
                                       {"r_used", rec.r_used},
                                       {"error", rec.error},
                                       {"bound", rec.bound},
                                       {"pass", rec.pass},
                                       {"numerical_failure", rec.numerical_failure}});
    }
    j["records"] = std::move(records);
    j["failures"] = rep.failures;
    j["failure_rate"] = rep.failure_rate;
    j["numerical_failures"] = rep.numerical_failures;
    j["wall_clock_seconds"] = rep.wall_clock_seconds;
    return j.dump(2) + "\n";
}

void emit_report(const ExperimentReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path);
    out << report_to_json_text(rep);
    if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

void emit_report_csv(const ExperimentReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report_csv: cannot open " + path);
    out.precision(17);
    out << "seed,r_used,error,bound,pass,numerical_failure\n";
    for (const TrialRecord& rec : rep.records) {
        out << rec.seed << "," << rec.r_used << "," << rec.error << "," << rec.bound << ","
            << (rec.pass ? 1 : 0) << "," << (rec.numerical_failure ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error("emit_report_csv: write failed for " + path);
}

ExperimentReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_report: cannot open " + path);
    ordered_json j;
    in >> j;

    ExperimentReport rep;
    rep.config = config_from_json(j.at("config"));
    rep.bound_target = j.at("bound_target").get<std::string>();
    rep.guaranteed = j.at("guaranteed").get<bool>();
    for (const auto& r : j.at("records")) {
        TrialRecord rec;
        rec.seed = r.at("seed").get<std::uint64_t>();
        rec.r_used = r.at("r_used").get<std::size_t>();
        rec.error = r.at("error").get<double>();
        rec.bound = r.at("bound").get<double>();
        rec.pass = r.at("pass").get<bool>();
        rec.numerical_failure = r.at("numerical_failure").get<bool>();
        rep.records.push_back(rec);
    }
    rep.failures = j.at("failures").get<std::size_t>();
    rep.failure_rate = j.at("failure_rate").get<double>();
    rep.numerical_failures = j.at("numerical_failures").get<std::size_t>();
    rep.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    return rep;
}

int report_exit_code(const ExperimentReport& rep) {
    if (rep.records.empty()) return 2;
    const double numeric_rate = static_cast<double>(rep.numerical_failures) /
                                static_cast<double>(rep.records.size());
    return numeric_rate > 0.1 ? 3 : 0;
}

}  // namespace rowsketch
