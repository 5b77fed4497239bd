#pragma once

#include <cstdint>

#include "rowsketch/matrix.hpp"
#include "rowsketch/row_sampler.hpp"

namespace rowsketch {

// A sampled product estimate together with the sampling decisions behind it.
struct ProductSketchResult {
    DenseMatrix estimate;  // A~^T A~ or A~^T B~
    std::size_t r_used = 0;
    double epsilon_target = 0.0;
    double delta_target = 0.0;
    ProbabilityFamily dist_family = ProbabilityFamily::row_norm;
    std::uint64_t seed = 0;
};

// Gram sketch by row-norm sampling; targets
// ||A^T A - A~^T A~|| <= eps ||A||^2 with probability >= 1 - delta.
ProductSketchResult approx_gram(const DenseMatrix& a, double epsilon, double delta,
                                std::uint64_t seed);

// Product sketch A^T B; spectral norms of A and B are estimated internally
// and the weakened certificate inflates the sample count. Targets
// ||A^T B - A~^T B~|| <= eps ||A|| ||B|| with probability >= 1 - delta.
ProductSketchResult approx_product(const DenseMatrix& a, const DenseMatrix& b, double epsilon,
                                   double delta, std::uint64_t seed);

}  // namespace rowsketch
