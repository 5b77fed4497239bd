#include "rowsketch/row_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rowsketch/rng.hpp"
#include "rowsketch/svd.hpp"

namespace rowsketch {

namespace {

SamplingDistribution normalized(std::vector<double> scores, ProbabilityFamily family,
                                double beta_certificate) {
    double total = 0.0;
    for (double s : scores) {
        if (s < 0.0) throw std::invalid_argument("sampling scores must be non-negative");
        total += s;
    }
    if (total <= 0.0) throw std::invalid_argument("sampling scores sum to zero");
    for (double& s : scores) s /= total;
    return SamplingDistribution{std::move(scores), family, beta_certificate};
}

std::vector<double> leverage_scores(const DenseMatrix& a) {
    const SvdFactors f = svd(a);
    if (f.rank() == 0)
        throw std::invalid_argument("leverage scores undefined for the zero matrix");
    std::vector<double> scores(a.rows());
    for (std::size_t t = 0; t < a.rows(); ++t) scores[t] = row_squared_norm(f.u, t);
    return scores;
}

}  // namespace

std::string_view family_name(ProbabilityFamily family) {
    switch (family) {
        case ProbabilityFamily::row_norm: return "row-norm";
        case ProbabilityFamily::leverage_exact: return "leverage-exact";
        case ProbabilityFamily::combined_rescaled: return "combined-rescaled";
        case ProbabilityFamily::regression: return "regression";
        case ProbabilityFamily::leverage_approx: return "leverage-approx";
    }
    return "unknown";
}

SamplingDistribution row_norm_probabilities(const DenseMatrix& a) {
    std::vector<double> scores(a.rows());
    for (std::size_t t = 0; t < a.rows(); ++t) scores[t] = row_squared_norm(a, t);
    return normalized(std::move(scores), ProbabilityFamily::row_norm, 1.0);
}

SamplingDistribution leverage_probabilities_exact(const DenseMatrix& a) {
    return normalized(leverage_scores(a), ProbabilityFamily::leverage_exact, 1.0);
}

SamplingDistribution combined_rescaled_probabilities(const DenseMatrix& a, const DenseMatrix& b,
                                                     double lam_a2, double lam_b2,
                                                     double norm_epsilon) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("combined_rescaled_probabilities: row counts differ");
    if (!(lam_a2 > 0.0) || !(lam_b2 > 0.0))
        throw std::invalid_argument("combined_rescaled_probabilities: norm estimates must be positive");
    if (norm_epsilon < 0.0 || norm_epsilon >= 1.0)
        throw std::invalid_argument("combined_rescaled_probabilities: norm_epsilon out of range");
    std::vector<double> scores(a.rows());
    for (std::size_t t = 0; t < a.rows(); ++t)
        scores[t] = row_squared_norm(a, t) / lam_a2 + row_squared_norm(b, t) / lam_b2;
    const double beta = (1.0 - norm_epsilon) / (1.0 + norm_epsilon);
    return normalized(std::move(scores), ProbabilityFamily::combined_rescaled, beta);
}

SamplingDistribution regression_probabilities_exact(const DenseMatrix& a,
                                                    std::span<const double> y) {
    if (y.size() != a.rows())
        throw std::invalid_argument("regression_probabilities_exact: y length mismatch");
    const SvdFactors f = svd(a);
    if (f.rank() == 0)
        throw std::invalid_argument("regression_probabilities_exact: zero matrix");
    std::vector<double> lev(a.rows());
    for (std::size_t t = 0; t < a.rows(); ++t) lev[t] = row_squared_norm(f.u, t);
    const double d = static_cast<double>(f.rank());

    // Residual of the exact solve: eps = y - U U^T y.
    const std::vector<double> uty = multiply_tvec(f.u, y);
    const std::vector<double> fitted = multiply_vec(f.u, uty);
    std::vector<double> residual(y.size());
    double res_sq = 0.0, y_sq = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        residual[t] = y[t] - fitted[t];
        res_sq += residual[t] * residual[t];
        y_sq += y[t] * y[t];
    }

    if (res_sq <= 1e-24 * y_sq) {
        // Residual at noise floor: the residual-dependent parts are meaningless.
        std::vector<double> scores(lev);
        return normalized(std::move(scores), ProbabilityFamily::regression, 1.0);
    }

    std::vector<double> scores(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double res_frac = residual[t] * residual[t] / res_sq;
        scores[t] = lev[t] / d + (lev[t] + res_frac) / (d + 1.0) + res_frac;
    }
    return normalized(std::move(scores), ProbabilityFamily::regression, 1.0 / 3.0);
}

RowSampleOperator draw_sample_operator(const SamplingDistribution& dist, std::size_t r,
                                       std::uint64_t seed) {
    if (r < 1) throw std::invalid_argument("draw_sample_operator: r must be positive");
    if (dist.p.empty()) throw std::invalid_argument("draw_sample_operator: empty distribution");

    std::vector<double> cdf(dist.p.size());
    double run = 0.0;
    for (std::size_t t = 0; t < dist.p.size(); ++t) {
        run += dist.p[t];
        cdf[t] = run;
    }
    std::size_t last_positive = dist.p.size();
    for (std::size_t t = dist.p.size(); t-- > 0;) {
        if (dist.p[t] > 0.0) {
            last_positive = t;
            break;
        }
    }
    if (last_positive == dist.p.size())
        throw std::invalid_argument("draw_sample_operator: all-zero distribution");

    RowSampleOperator op;
    op.r = r;
    op.seed = seed;
    op.indices.resize(r);
    op.scales.resize(r);
    Rng rng(seed);
    const double rd = static_cast<double>(r);
    for (std::size_t j = 0; j < r; ++j) {
        const double u = rng.next_double();
        // First index with cdf > u; zero-width (p_t = 0) intervals are skipped.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t t = it == cdf.end() ? last_positive
                                        : static_cast<std::size_t>(it - cdf.begin());
        if (dist.p[t] == 0.0) t = last_positive;  // cumulative rounding edge
        op.indices[j] = t;
        op.scales[j] = 1.0 / std::sqrt(rd * dist.p[t]);
    }
    return op;
}

DenseMatrix apply_sample(const RowSampleOperator& op, const DenseMatrix& a) {
    DenseMatrix out(op.r, a.cols());
    for (std::size_t j = 0; j < op.r; ++j) {
        if (op.indices[j] >= a.rows())
            throw std::invalid_argument("apply_sample: index out of range");
        const auto src = a.row(op.indices[j]);
        auto dst = out.row(j);
        for (std::size_t c = 0; c < a.cols(); ++c) dst[c] = op.scales[j] * src[c];
    }
    return out;
}

std::vector<double> apply_sample_vec(const RowSampleOperator& op, std::span<const double> y) {
    std::vector<double> out(op.r);
    for (std::size_t j = 0; j < op.r; ++j) {
        if (op.indices[j] >= y.size())
            throw std::invalid_argument("apply_sample_vec: index out of range");
        out[j] = op.scales[j] * y[op.indices[j]];
    }
    return out;
}

}  // namespace rowsketch
