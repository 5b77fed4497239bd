#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rowsketch/matrix.hpp"

namespace rowsketch {

// Generating rule behind a sampling distribution.
enum class ProbabilityFamily {
    row_norm,           // p_t ~ ||a_t||^2
    leverage_exact,     // p_t ~ ||u_t||^2
    combined_rescaled,  // p_t ~ ||a_t||^2/lam_A^2 + ||b_t||^2/lam_B^2
    regression,         // three-way mixture over leverage and residual mass
    leverage_approx,    // FJLT-estimated leverage scores
};

std::string_view family_name(ProbabilityFamily family);

// Length-m probability vector plus the beta under which it provably
// dominates its target scores. Rows whose generating score is exactly zero
// carry p_t = 0 and are never drawn.
struct SamplingDistribution {
    std::vector<double> p;
    ProbabilityFamily family = ProbabilityFamily::row_norm;
    double beta_certificate = 1.0;
};

// r sampled row indices (0-based) with rescale factors 1/sqrt(r p_t); the
// implicit representation of the sampling matrix Q.
struct RowSampleOperator {
    std::vector<std::size_t> indices;
    std::vector<double> scales;
    std::size_t r = 0;
    std::uint64_t seed = 0;
};

// p_t = ||a_t||^2 / ||A||_F^2.
SamplingDistribution row_norm_probabilities(const DenseMatrix& a);

// p_t = ||u_t||^2 / k from the numerical-rank-k left singular factor.
SamplingDistribution leverage_probabilities_exact(const DenseMatrix& a);

// p_t = (||a_t||^2/lam_a2 + ||b_t||^2/lam_b2) / (||A||_F^2/lam_a2 + ||B||_F^2/lam_b2).
// norm_epsilon is the accuracy of the spectral-norm estimates lam_a2/lam_b2;
// the certificate is beta = (1 - norm_epsilon)/(1 + norm_epsilon).
SamplingDistribution combined_rescaled_probabilities(const DenseMatrix& a, const DenseMatrix& b,
                                                     double lam_a2, double lam_b2,
                                                     double norm_epsilon = 0.0);

// Three-part mixture over leverage scores and the exactly computed residual
// eps = y - A A^+ y:
//   p_t = (1/3) (||u_t||^2/d + (||u_t||^2 + eps_t^2/eps.eps)/(d+1) + eps_t^2/eps.eps)
// with beta = 1/3. When eps.eps <= 1e-24 ||y||^2 the residual parts are
// dropped and the distribution degenerates to exact leverage with beta = 1.
SamplingDistribution regression_probabilities_exact(const DenseMatrix& a,
                                                    std::span<const double> y);

// Draws r indices i.i.d. (with replacement) by inverse-CDF lookup on the
// cumulative sums; deterministic given the seed.
RowSampleOperator draw_sample_operator(const SamplingDistribution& dist, std::size_t r,
                                       std::uint64_t seed);

// Materializes QA: the r x d matrix whose j-th row is scales_j * a_{indices_j}.
DenseMatrix apply_sample(const RowSampleOperator& op, const DenseMatrix& a);

// Qy for a length-m vector.
std::vector<double> apply_sample_vec(const RowSampleOperator& op, std::span<const double> y);

}  // namespace rowsketch
