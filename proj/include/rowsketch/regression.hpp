#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rowsketch/matrix.hpp"
#include "rowsketch/row_sampler.hpp"

namespace rowsketch {

struct RegressionSolution {
    std::vector<double> x;
    std::vector<double> residual;  // y - A x
    double objective = 0.0;        // ||A x - y||
    std::optional<std::size_t> r_used;  // empty for the exact solver
    std::optional<std::uint64_t> seed;
};

// Minimum-norm least squares x* = A^+ y.
RegressionSolution exact_least_squares(const DenseMatrix& a, std::span<const double> y);

// Sketch-and-solve regression: samples (A, y) under the three-part mixture
// probabilities and solves the subproblem, x^ = (QA)^+ Qy. Targets
//   ||A x^ - y|| <= (1 + eps + eps sqrt((1+eps)/(1-eps))) ||A x* - y||
// with probability >= 1 - 3 delta. A rank-deficient draw is retried once
// with a fresh sub-seed before failing.
RegressionSolution sampled_least_squares(const DenseMatrix& a, std::span<const double> y,
                                         double epsilon, double delta, std::uint64_t seed);

// Per-draw structural certificates for the sampled subproblem.
struct StructuralReport {
    bool rank_chain_ok = false;       // rank(QA) = rank(QU_A) = rank(A)
    double sigma_gap = 0.0;           // ||S_{QU} - S_{QU}^{-1}||
    bool sigma_gap_ok = false;        //   <= eps / sqrt(1 - eps)
    double pinv_transpose_gap = 0.0;  // ||(QU)^+ - (QU)^T||
    bool pinv_transpose_gap_ok = false;
    double factorization_gap = 0.0;   // ||(QA)^+ - V S^-1 (QU)^+|| / ||(QA)^+||
    bool factorization_ok = false;    //   <= 1e-8 relative
};

StructuralReport verify_structural_conditions(const DenseMatrix& a, const RowSampleOperator& op,
                                              double epsilon);

}  // namespace rowsketch
