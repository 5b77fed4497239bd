#include "rowsketch/regression.hpp"

#include <cmath>
#include <stdexcept>

#include "rowsketch/errors.hpp"
#include "rowsketch/rng.hpp"
#include "rowsketch/svd.hpp"

namespace rowsketch {

namespace {

RegressionSolution solution_from_x(const DenseMatrix& a, std::span<const double> y,
                                   std::vector<double> x) {
    RegressionSolution sol;
    sol.x = std::move(x);
    const std::vector<double> fitted = multiply_vec(a, sol.x);
    sol.residual.resize(y.size());
    double sq = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        sol.residual[t] = y[t] - fitted[t];
        sq += sol.residual[t] * sol.residual[t];
    }
    sol.objective = std::sqrt(sq);
    return sol;
}

}  // namespace

RegressionSolution exact_least_squares(const DenseMatrix& a, std::span<const double> y) {
    if (y.size() != a.rows())
        throw std::invalid_argument("exact_least_squares: y length mismatch");
    const SvdFactors f = svd(a);
    // x = V S^-1 U^T y
    std::vector<double> uty = multiply_tvec(f.u, y);
    for (std::size_t j = 0; j < f.rank(); ++j) uty[j] /= f.s[j];
    std::vector<double> x = f.rank() == 0 ? std::vector<double>(a.cols(), 0.0)
                                          : multiply_vec(f.v, uty);
    return solution_from_x(a, y, std::move(x));
}

RegressionSolution sampled_least_squares(const DenseMatrix& a, std::span<const double> y,
                                         double epsilon, double delta, std::uint64_t seed) {
    if (y.size() != a.rows())
        throw std::invalid_argument("sampled_least_squares: y length mismatch");
    if (!(epsilon > 0.0) || epsilon >= 1.0 || !(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("sampled_least_squares: epsilon and delta must lie in (0, 1)");

    const SamplingDistribution dist = regression_probabilities_exact(a, y);
    const std::size_t rank_a = svd(a).rank();

    // r >= (8(d+1)/(beta eps^2)) ln(2(d+1)/delta)
    const double d = static_cast<double>(a.cols());
    const double beta = dist.beta_certificate;
    const std::size_t r = static_cast<std::size_t>(std::max(
        1.0, std::ceil(8.0 * (d + 1.0) / (beta * epsilon * epsilon) *
                       std::log(2.0 * (d + 1.0) / delta))));

    for (int attempt = 0; attempt < 2; ++attempt) {
        const std::uint64_t draw_seed =
            attempt == 0 ? seed : derive_seed(seed, 0x7e7e7e7eull);
        const RowSampleOperator op = draw_sample_operator(dist, r, draw_seed);
        const DenseMatrix sketch = apply_sample(op, a);
        if (svd(sketch).rank() < rank_a) continue;  // rank lost in the draw
        const std::vector<double> sketch_y = apply_sample_vec(op, y);
        std::vector<double> x = multiply_vec(pseudo_inverse(sketch), sketch_y);
        RegressionSolution sol = solution_from_x(a, y, std::move(x));
        sol.r_used = r;
        sol.seed = seed;
        return sol;
    }
    throw numerical_error("sampled_least_squares: sampled matrix rank-deficient after retry");
}

StructuralReport verify_structural_conditions(const DenseMatrix& a, const RowSampleOperator& op,
                                              double epsilon) {
    if (!(epsilon > 0.0) || epsilon >= 1.0)
        throw std::invalid_argument("verify_structural_conditions: epsilon must lie in (0, 1)");
    const SvdFactors f = svd(a);
    if (f.rank() == 0)
        throw std::invalid_argument("verify_structural_conditions: zero matrix");

    const DenseMatrix sampled_a = apply_sample(op, a);
    const DenseMatrix sampled_u = apply_sample(op, f.u);
    const SvdFactors fu = svd(sampled_u);

    StructuralReport report;
    report.rank_chain_ok =
        svd(sampled_a).rank() == f.rank() && fu.rank() == f.rank();

    const double threshold = epsilon / std::sqrt(1.0 - epsilon);

    // ||S_{QU} - S_{QU}^{-1}|| over the achieved rank.
    double gap = 0.0;
    for (double s : fu.s) gap = std::max(gap, std::abs(s - 1.0 / s));
    report.sigma_gap = gap;
    report.sigma_gap_ok = report.rank_chain_ok && gap <= threshold;

    report.pinv_transpose_gap =
        spectral_norm_exact(subtract(pseudo_inverse(sampled_u), transposed(sampled_u)));
    report.pinv_transpose_gap_ok =
        report.rank_chain_ok && report.pinv_transpose_gap <= threshold;

    // (QA)^+ = V_A S_A^-1 (QU_A)^+
    const DenseMatrix lhs = pseudo_inverse(sampled_a);
    DenseMatrix v_scaled = f.v;
    for (std::size_t j = 0; j < f.rank(); ++j) {
        const double inv = 1.0 / f.s[j];
        for (std::size_t i = 0; i < v_scaled.rows(); ++i) v_scaled(i, j) *= inv;
    }
    const DenseMatrix rhs = multiply(v_scaled, pseudo_inverse(sampled_u));
    const double scale = spectral_norm_exact(lhs);
    report.factorization_gap =
        scale == 0.0 ? 0.0 : spectral_norm_exact(subtract(lhs, rhs)) / scale;
    report.factorization_ok = report.factorization_gap <= 1e-8;
    return report;
}

}  // namespace rowsketch
