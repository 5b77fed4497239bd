#pragma once

#include <cstdint>
#include <vector>

#include "rowsketch/matrix.hpp"
#include "rowsketch/row_sampler.hpp"

namespace rowsketch {

// Subsampled randomized Hadamard transform R = scale * P * H * D acting on
// length-m vectors: D is a seed-derived +-1 diagonal, H the normalized
// Walsh-Hadamard transform on the power-of-two padding, P a uniform
// with-replacement row subset, scale = sqrt(m_padded / r_target).
struct FjltOperator {
    std::size_t m_logical = 0;
    std::size_t m_padded = 0;
    std::size_t r_target = 0;
    std::uint64_t seed = 0;
    std::vector<std::int8_t> sign_diagonal;   // length m_padded
    std::vector<std::size_t> row_subset;      // length r_target, into [0, m_padded)
    double scale = 1.0;
    bool degenerate = false;  // r_target >= m_padded; still a valid operator
};

// Embedding-dimension constant in r = (c/eps^2)(d ln(d/eps) + ln(d+m)) ln(1/delta).
inline constexpr double kFjltConstant = 1.0;

// Certified approximation constant of the leverage estimates: the returned
// distribution dominates the exact scores with beta = 1 / (c ln^2 m).
inline constexpr double kLeverageApproxConstant = 4.0;

// Sum-accuracy constant of the raw estimates, (1 +- c eps) d.
inline const double kLeverageSumConstant = 3.6457513110645907;  // 1 + sqrt(7)

// Row-wise accuracy constant: |w~_t - ||u_t||^2| <= c eps ||u_t||.
inline constexpr double kLeverageRowConstant = 3.5;

FjltOperator build_fjlt(std::size_t m, std::size_t d, double epsilon, double delta,
                        std::uint64_t seed);

// R A for an (m_logical x d) input; O(m_padded log m_padded) per column.
DenseMatrix apply_fjlt(const FjltOperator& op, const DenseMatrix& a);

// X R for a (d x r_target) input, returning d x m_logical; same fast path on
// the transposed factorization.
DenseMatrix apply_fjlt_right(const FjltOperator& op, const DenseMatrix& x);

// Leverage-score estimates and the distribution built from them.
struct LeverageEstimate {
    std::vector<double> w_tilde;   // raw estimates a_t . X^(t)
    std::vector<double> w;         // thresholded: max(eps^2, w~_t)
    SamplingDistribution p;        // family leverage_approx
    double epsilon_used = 0.0;     // eps = (1/2) sqrt(d ln^2 m / m)
    double sum_w_tilde = 0.0;
};

// Shared estimation core: w~_t = a_t . X^(t) for a d x m mixing matrix X.
// Production passes X = (RA)^+ R; tests may pass a lossless X = A^+.
std::vector<double> leverage_scores_from_mixing(const DenseMatrix& a, const DenseMatrix& x);

// Builds the thresholded, normalized estimate from raw scores at a given eps.
LeverageEstimate leverage_estimate_from_scores(std::vector<double> w_tilde, double epsilon,
                                               std::size_t m_for_certificate);

// Sub-SVD leverage approximation: sets eps from (m, d), mixes through an
// FJLT, thresholds and normalizes. Requires m >= (4/9) d ln^2 m. A
// rank-deficient R A draw is retried once with a fresh sub-seed.
LeverageEstimate estimate_leverage_probabilities(const DenseMatrix& a, double delta,
                                                 std::uint64_t seed);

// Per-row comparison of the estimates against exact leverage scores
// (test-scale only: needs a full SVD of A).
struct AccuracyReport {
    std::size_t rows_checked = 0;
    std::size_t sandwich_violations = 0;   // |w~ - ||u||^2| > c eps ||u|| at c = 7/2
    std::size_t floor_violations = 0;      // w~ < -c^2 eps^2 / 4
    std::size_t inverted_violations = 0;   // ||u||^2 outside the inverted bounds
    double min_passing_constant = 0.0;     // smallest c making every row pass
};

AccuracyReport leverage_accuracy_report(const LeverageEstimate& est, const DenseMatrix& a);

}  // namespace rowsketch
