#pragma once

#include <cstdint>
#include <vector>

#include "rowsketch/matrix.hpp"

namespace rowsketch {

// History of a power iteration on A^T A from an isotropic start: the
// estimate lambda_k^2 = ||A^T A x_k|| after each step. The sequence is
// non-decreasing and bounded by ||A||^2.
struct PowerIterationTrace {
    std::vector<double> lambda2_per_step;
    std::size_t n_steps = 0;
    std::uint64_t seed = 0;

    double final_lambda2() const { return lambda2_per_step.back(); }
};

// Number of power iterations used by estimate_spectral_norm is
// ceil(c * ln(d1 / delta)); the paper leaves c unspecified.
inline constexpr double kPowerIterationConstant = 2.0;

// Runs n power-iteration steps x_k = A^T A x_{k-1} / ||A^T A x_{k-1}|| from a
// normalized standard-normal start. Restarts with a fresh sub-seed (at most 3
// times) if the iterate lands in the null space.
PowerIterationTrace power_iteration_norm(const DenseMatrix& a, std::size_t n,
                                         std::uint64_t seed);

// Rows drawn by the pre-sampling stage of estimate_spectral_norm. The stable
// rank in the formula is replaced by the cheap upper bound
// min(d1, ||A||_F^2 / max_t ||a_t||^2), which only enlarges r.
std::size_t spectral_presample_size(const DenseMatrix& a, double delta);

// Constant-factor spectral-norm estimate: pre-samples rows of A by row norms
// at eps = 1/2, then power-iterates on the sketch. Returns sigma~_1^2 with
// guarantee target ||A||^2 / (2 sqrt(5)) <= sigma~_1^2 <= (3/2) ||A||^2.
double estimate_spectral_norm(const DenseMatrix& a, double delta, std::uint64_t seed);

// Envelope of the estimate's guarantee interval, expressed as the epsilon of
// a symmetric (1 +- eps) accuracy statement; consumed by the combined
// matrix-product probabilities.
double spectral_estimate_envelope_epsilon();

}  // namespace rowsketch
