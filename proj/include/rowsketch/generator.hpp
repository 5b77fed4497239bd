#pragma once

#include <cstdint>
#include <span>

#include "rowsketch/matrix.hpp"

namespace rowsketch {

enum class CoherenceMode {
    uniform,  // near-uniform leverage scores
    planted,  // one high-leverage row at a chosen index
};

// Synthesizes A = U diag(spectrum) V^T with random orthonormal factors and
// the exact singular values requested. In planted mode, row planted_row of U
// carries leverage far above the median.
DenseMatrix generate_matrix(std::size_t m, std::size_t d, std::span<const double> spectrum,
                            CoherenceMode coherence, std::size_t planted_row,
                            std::uint64_t seed);

// Random matrix with orthonormal columns (m x d), m >= d.
DenseMatrix random_orthonormal(std::size_t m, std::size_t d, std::uint64_t seed);

}  // namespace rowsketch
