#include "rowsketch/sketch_matmul.hpp"

#include <stdexcept>

#include "rowsketch/rng.hpp"
#include "rowsketch/spectral_estimator.hpp"
#include "rowsketch/svd.hpp"
#include "rowsketch/tail_bounds.hpp"

namespace rowsketch {

ProductSketchResult approx_gram(const DenseMatrix& a, double epsilon, double delta,
                                std::uint64_t seed) {
    if (!(epsilon > 0.0) || epsilon >= 1.0 || !(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("approx_gram: epsilon and delta must lie in (0, 1)");
    const SamplingDistribution dist = row_norm_probabilities(a);
    const double rho = stable_rank(a);
    const SampleSizePlan plan = sample_size_symmetric(rho, 1.0, epsilon, delta, a.cols());
    const RowSampleOperator op = draw_sample_operator(dist, plan.r, seed);
    const DenseMatrix sketch = apply_sample(op, a);

    ProductSketchResult result;
    result.estimate = multiply_at_b(sketch, sketch);
    result.r_used = plan.r;
    result.epsilon_target = epsilon;
    result.delta_target = delta;
    result.dist_family = dist.family;
    result.seed = seed;
    return result;
}

ProductSketchResult approx_product(const DenseMatrix& a, const DenseMatrix& b, double epsilon,
                                   double delta, std::uint64_t seed) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("approx_product: row counts differ");
    if (!(epsilon > 0.0) || epsilon >= 1.0 || !(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("approx_product: epsilon and delta must lie in (0, 1)");

    // Split the failure budget between the two norm estimates and the draw.
    const double lam_a2 = estimate_spectral_norm(a, delta / 4.0, derive_seed(seed, 1));
    const double lam_b2 = estimate_spectral_norm(b, delta / 4.0, derive_seed(seed, 2));
    const double norm_eps = spectral_estimate_envelope_epsilon();
    const SamplingDistribution dist =
        combined_rescaled_probabilities(a, b, lam_a2, lam_b2, norm_eps);

    // Stable ranks from exact Frobenius norms over the estimated spectral
    // norms; underestimated lambda^2 only inflates r (conservative).
    const double fro_a = frobenius_norm(a);
    const double fro_b = frobenius_norm(b);
    const double rho_a = std::max(1.0, fro_a * fro_a / lam_a2);
    const double rho_b = std::max(1.0, fro_b * fro_b / lam_b2);
    const SampleSizePlan plan = sample_size_asymmetric(rho_a, rho_b, dist.beta_certificate,
                                                       epsilon, delta / 2.0, a.cols(), b.cols());

    const RowSampleOperator op = draw_sample_operator(dist, plan.r, derive_seed(seed, 0));
    const DenseMatrix sketch_a = apply_sample(op, a);
    const DenseMatrix sketch_b = apply_sample(op, b);

    ProductSketchResult result;
    result.estimate = multiply_at_b(sketch_a, sketch_b);
    result.r_used = plan.r;
    result.epsilon_target = epsilon;
    result.delta_target = delta;
    result.dist_family = dist.family;
    result.seed = seed;
    return result;
}

}  // namespace rowsketch
