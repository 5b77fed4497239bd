#include "rowsketch/spectral_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rowsketch/errors.hpp"
#include "rowsketch/rng.hpp"
#include "rowsketch/row_sampler.hpp"
#include "rowsketch/tail_bounds.hpp"

namespace rowsketch {

namespace {

std::vector<double> isotropic_start(std::size_t dim, Rng& rng) {
    std::vector<double> x(dim);
    for (double& v : x) v = rng.next_normal();
    const double norm = vector_norm(x);
    if (norm > 0.0)
        for (double& v : x) v /= norm;
    return x;
}

// y = A^T (A x)
std::vector<double> gram_apply(const DenseMatrix& a, std::span<const double> x) {
    return multiply_tvec(a, multiply_vec(a, x));
}

}  // namespace

PowerIterationTrace power_iteration_norm(const DenseMatrix& a, std::size_t n,
                                         std::uint64_t seed) {
    if (a.empty()) throw std::invalid_argument("power_iteration_norm: empty matrix");
    if (n < 1) throw std::invalid_argument("power_iteration_norm: n must be >= 1");
    if (frobenius_norm(a) == 0.0)
        throw std::invalid_argument("power_iteration_norm: zero matrix");

    constexpr int kMaxRestarts = 3;
    for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        Rng rng(attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<double> x = isotropic_start(a.cols(), rng);

        PowerIterationTrace trace;
        trace.seed = seed;
        trace.lambda2_per_step.reserve(n);
        bool collapsed = false;
        // lambda_k^2 = ||A^T A x_k|| is the pre-normalization norm of the
        // (k+1)-th iterate, so each step costs one application of A^T A.
        for (std::size_t k = 0; k <= n; ++k) {
            std::vector<double> y = gram_apply(a, x);
            const double norm = vector_norm(y);
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                collapsed = true;  // start vector fell in the null space
                break;
            }
            if (k > 0) trace.lambda2_per_step.push_back(norm);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] /= norm;
            x = std::move(y);
        }
        if (!collapsed) {
            trace.n_steps = n;
            return trace;
        }
    }
    throw numerical_error("power_iteration_norm: start vector collapsed after 3 restarts");
}

std::size_t spectral_presample_size(const DenseMatrix& a, double delta) {
    const double fro2 = frobenius_norm(a) * frobenius_norm(a);
    if (fro2 == 0.0) throw std::invalid_argument("spectral_presample_size: zero matrix");
    // Cheap upper bound on the stable rank: ||A||^2 >= max_t ||a_t||^2, and
    // rho <= d always; the sample-size formula only needs rho from above.
    double max_row_sq = 0.0;
    for (std::size_t t = 0; t < a.rows(); ++t)
        max_row_sq = std::max(max_row_sq, row_squared_norm(a, t));
    const double d1 = static_cast<double>(a.cols());
    const double rho_upper = std::max(1.0, std::min(d1, fro2 / max_row_sq));
    return sample_size_symmetric(rho_upper, 1.0, 0.5, delta, a.cols()).r;
}

double estimate_spectral_norm(const DenseMatrix& a, double delta, std::uint64_t seed) {
    if (a.empty()) throw std::invalid_argument("estimate_spectral_norm: empty matrix");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("estimate_spectral_norm: delta must lie in (0, 1)");

    const std::size_t r = spectral_presample_size(a, delta);
    const SamplingDistribution dist = row_norm_probabilities(a);
    const RowSampleOperator op = draw_sample_operator(dist, r, derive_seed(seed, 0));
    const DenseMatrix sketch = apply_sample(op, a);
    const double d1 = static_cast<double>(a.cols());

    const std::size_t iters = static_cast<std::size_t>(
        std::max(1.0, std::ceil(kPowerIterationConstant * std::log(d1 / delta))));
    const PowerIterationTrace trace = power_iteration_norm(sketch, iters, derive_seed(seed, 1));
    return trace.final_lambda2();
}

double spectral_estimate_envelope_epsilon() {
    const double lo = 1.0 / (2.0 * std::sqrt(5.0));
    const double hi = 1.5;
    return std::max(1.0 - lo, hi - 1.0);
}

}  // namespace rowsketch
