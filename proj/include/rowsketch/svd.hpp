#pragma once

#include <span>
#include <vector>

#include "rowsketch/matrix.hpp"

namespace rowsketch {

// Thin SVD truncated to the numerical rank k: A = U diag(s) V^T with
// orthonormal U (m x k), strictly positive non-increasing s, orthonormal
// V (d x k). Column signs are normalized so the first nonzero entry of each
// U column is non-negative.
struct SvdFactors {
    DenseMatrix u;
    std::vector<double> s;
    DenseMatrix v;

    std::size_t rank() const noexcept { return s.size(); }
};

// Singular values below max(m,d) * sigma_max * 1e-12 are treated as zero.
double rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max);

// One-sided Jacobi SVD. Throws numerical_error if the sweep budget is
// exhausted before the columns decouple.
SvdFactors svd(const DenseMatrix& a);

// Moore-Penrose pseudo-inverse V diag(1/s) U^T with rank truncation.
DenseMatrix pseudo_inverse(const DenseMatrix& a);

// Largest singular value (0 for the zero matrix).
double spectral_norm_exact(const DenseMatrix& a);

// ||A||_F^2 / ||A||^2. Rejects the zero matrix.
double stable_rank(const DenseMatrix& a);

// max(s)/min(s); every entry must be positive.
double condition_number(std::span<const double> s);

// Best rank-k approximation U_k S_k V_k^T; returns A itself when k covers
// the numerical rank.
DenseMatrix best_rank_k(const DenseMatrix& a, std::size_t k);

}  // namespace rowsketch
