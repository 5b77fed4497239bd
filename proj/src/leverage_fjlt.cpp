#include "rowsketch/leverage_fjlt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rowsketch/errors.hpp"
#include "rowsketch/rng.hpp"
#include "rowsketch/svd.hpp"

namespace rowsketch {

namespace {

// In-place unnormalized Walsh-Hadamard butterfly over the row dimension of a
// row-major (n x width) block; n must be a power of two.
void fwht_rows(std::vector<double>& data, std::size_t n, std::size_t width) {
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                double* top = data.data() + j * width;
                double* bot = data.data() + (j + h) * width;
                for (std::size_t c = 0; c < width; ++c) {
                    const double s = top[c];
                    const double t = bot[c];
                    top[c] = s + t;
                    bot[c] = s - t;
                }
            }
        }
    }
}

double leverage_epsilon(std::size_t m, std::size_t d) {
    const double logm = std::log(static_cast<double>(m));
    return 0.5 * std::sqrt(static_cast<double>(d) * logm * logm / static_cast<double>(m));
}

}  // namespace

FjltOperator build_fjlt(std::size_t m, std::size_t d, double epsilon, double delta,
                        std::uint64_t seed) {
    if (m < 1 || d < 1) throw std::invalid_argument("build_fjlt: dimensions must be positive");
    if (!(epsilon > 0.0) || epsilon >= 1.0 || !(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("build_fjlt: epsilon and delta must lie in (0, 1)");

    FjltOperator op;
    op.m_logical = m;
    op.m_padded = std::bit_ceil(m);
    op.seed = seed;

    const double dd = static_cast<double>(d);
    const double target = kFjltConstant / (epsilon * epsilon) *
                          (dd * std::log(dd / epsilon) + std::log(dd + static_cast<double>(m))) *
                          std::log(1.0 / delta);
    op.r_target = static_cast<std::size_t>(std::max(1.0, std::ceil(target)));
    op.degenerate = op.r_target >= op.m_padded;
    op.scale = std::sqrt(static_cast<double>(op.m_padded) / static_cast<double>(op.r_target));

    Rng rng(seed);
    op.sign_diagonal.resize(op.m_padded);
    for (auto& s : op.sign_diagonal) s = (rng.next_u64() & 1u) ? std::int8_t{1} : std::int8_t{-1};
    op.row_subset.resize(op.r_target);
    for (auto& t : op.row_subset) t = rng.next_index(op.m_padded);
    return op;
}

DenseMatrix apply_fjlt(const FjltOperator& op, const DenseMatrix& a) {
    if (a.rows() != op.m_logical)
        throw std::invalid_argument("apply_fjlt: row count does not match the operator");
    const std::size_t d = a.cols();

    // D then pad with zero rows.
    std::vector<double> padded(op.m_padded * d, 0.0);
    for (std::size_t i = 0; i < op.m_logical; ++i) {
        const double sign = static_cast<double>(op.sign_diagonal[i]);
        const auto src = a.row(i);
        double* dst = padded.data() + i * d;
        for (std::size_t c = 0; c < d; ++c) dst[c] = sign * src[c];
    }
    fwht_rows(padded, op.m_padded, d);

    // scale * (1/sqrt(m_padded)) folds to 1/sqrt(r_target).
    const double factor = 1.0 / std::sqrt(static_cast<double>(op.r_target));
    DenseMatrix out(op.r_target, d);
    for (std::size_t j = 0; j < op.r_target; ++j) {
        const double* src = padded.data() + op.row_subset[j] * d;
        auto dst = out.row(j);
        for (std::size_t c = 0; c < d; ++c) dst[c] = factor * src[c];
    }
    return out;
}

DenseMatrix apply_fjlt_right(const FjltOperator& op, const DenseMatrix& x) {
    if (x.cols() != op.r_target)
        throw std::invalid_argument("apply_fjlt_right: column count does not match the operator");
    const std::size_t d = x.rows();

    // (X R)^T = scale * D H (P^T X^T): scatter the columns of X onto the
    // padded rows, transform, sign-flip, truncate.
    std::vector<double> padded(op.m_padded * d, 0.0);
    for (std::size_t j = 0; j < op.r_target; ++j) {
        double* dst = padded.data() + op.row_subset[j] * d;
        for (std::size_t i = 0; i < d; ++i) dst[i] += x(i, j);
    }
    fwht_rows(padded, op.m_padded, d);

    const double factor = 1.0 / std::sqrt(static_cast<double>(op.r_target));
    DenseMatrix out(d, op.m_logical);
    for (std::size_t t = 0; t < op.m_logical; ++t) {
        const double f = factor * static_cast<double>(op.sign_diagonal[t]);
        const double* src = padded.data() + t * d;
        for (std::size_t i = 0; i < d; ++i) out(i, t) = f * src[i];
    }
    return out;
}

std::vector<double> leverage_scores_from_mixing(const DenseMatrix& a, const DenseMatrix& x) {
    if (x.rows() != a.cols() || x.cols() != a.rows())
        throw std::invalid_argument("leverage_scores_from_mixing: X must be d x m");
    std::vector<double> w(a.rows());
    for (std::size_t t = 0; t < a.rows(); ++t) {
        const auto arow = a.row(t);
        double sum = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) sum += arow[i] * x(i, t);
        w[t] = sum;
    }
    return w;
}

LeverageEstimate leverage_estimate_from_scores(std::vector<double> w_tilde, double epsilon,
                                               std::size_t m_for_certificate) {
    LeverageEstimate est;
    est.epsilon_used = epsilon;
    est.sum_w_tilde = 0.0;
    for (double v : w_tilde) est.sum_w_tilde += v;

    const double floor = epsilon * epsilon;
    est.w.resize(w_tilde.size());
    double total = 0.0;
    for (std::size_t t = 0; t < w_tilde.size(); ++t) {
        est.w[t] = std::max(floor, w_tilde[t]);
        total += est.w[t];
    }
    est.w_tilde = std::move(w_tilde);

    est.p.family = ProbabilityFamily::leverage_approx;
    const double logm = std::log(static_cast<double>(m_for_certificate));
    est.p.beta_certificate = 1.0 / (kLeverageApproxConstant * logm * logm);
    est.p.p.resize(est.w.size());
    for (std::size_t t = 0; t < est.w.size(); ++t) est.p.p[t] = est.w[t] / total;
    return est;
}

LeverageEstimate estimate_leverage_probabilities(const DenseMatrix& a, double delta,
                                                 std::uint64_t seed) {
    const std::size_t m = a.rows();
    const std::size_t d = a.cols();
    const double logm = std::log(static_cast<double>(m));
    if (static_cast<double>(m) < (4.0 / 9.0) * static_cast<double>(d) * logm * logm)
        throw std::invalid_argument(
            "estimate_leverage_probabilities: m must satisfy m >= (4/9) d ln^2 m");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("estimate_leverage_probabilities: delta must lie in (0, 1)");

    const double epsilon = leverage_epsilon(m, d);

    for (int attempt = 0; attempt < 2; ++attempt) {
        const std::uint64_t op_seed = attempt == 0 ? seed : derive_seed(seed, 0x1e7e7ull);
        const FjltOperator op = build_fjlt(m, d, epsilon, delta, op_seed);
        const DenseMatrix mixed = apply_fjlt(op, a);  // R A
        const SvdFactors f = svd(mixed);
        if (f.rank() < d) continue;  // rank lost in the projection
        const DenseMatrix mixing = apply_fjlt_right(op, pseudo_inverse(mixed));  // (RA)^+ R
        return leverage_estimate_from_scores(leverage_scores_from_mixing(a, mixing), epsilon, m);
    }
    throw numerical_error("estimate_leverage_probabilities: R A rank-deficient after retry");
}

AccuracyReport leverage_accuracy_report(const LeverageEstimate& est, const DenseMatrix& a) {
    if (est.w_tilde.size() != a.rows())
        throw std::invalid_argument("leverage_accuracy_report: estimate/matrix mismatch");
    const SvdFactors f = svd(a);
    const double eps = est.epsilon_used;
    const double c = kLeverageRowConstant;

    AccuracyReport report;
    report.rows_checked = a.rows();
    for (std::size_t t = 0; t < a.rows(); ++t) {
        const double lev = row_squared_norm(f.u, t);
        const double lev_norm = std::sqrt(lev);
        const double w = est.w_tilde[t];

        if (std::abs(w - lev) > c * eps * lev_norm) ++report.sandwich_violations;
        if (w < -0.25 * c * c * eps * eps) ++report.floor_violations;

        // Inverted bounds for ||u_t||^2 in terms of w~_t.
        const double disc = std::sqrt(std::max(0.0, c * c * eps * eps + 4.0 * w));
        const double lower = w + 0.5 * c * c * eps * eps - 0.5 * c * eps * disc;
        const double upper = w + 0.5 * c * c * eps * eps + 0.5 * c * eps * disc;
        if (lev < lower - 1e-12 || lev > upper + 1e-12) ++report.inverted_violations;

        if (lev_norm > 0.0)
            report.min_passing_constant =
                std::max(report.min_passing_constant, std::abs(w - lev) / (eps * lev_norm));
    }
    return report;
}

}  // namespace rowsketch
