#include "rowsketch/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "rowsketch/errors.hpp"
#include "rowsketch/rng.hpp"

namespace rowsketch {

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass.
void orthonormalize_columns(DenseMatrix& g) {
    const std::size_t m = g.rows();
    const std::size_t d = g.cols();
    for (std::size_t j = 0; j < d; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < j; ++prev) {
                double proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += g(i, prev) * g(i, j);
                for (std::size_t i = 0; i < m; ++i) g(i, j) -= proj * g(i, prev);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm += g(i, j) * g(i, j);
        norm = std::sqrt(norm);
        if (!(norm > 1e-150))
            throw numerical_error("random_orthonormal: degenerate column");
        for (std::size_t i = 0; i < m; ++i) g(i, j) /= norm;
    }
}

DenseMatrix gaussian_matrix(std::size_t m, std::size_t d, Rng& rng) {
    DenseMatrix g(m, d);
    for (double& v : g.data()) v = rng.next_normal();
    return g;
}

}  // namespace

DenseMatrix random_orthonormal(std::size_t m, std::size_t d, std::uint64_t seed) {
    if (m < d) throw std::invalid_argument("random_orthonormal: m must be >= d");
    Rng rng(seed);
    DenseMatrix g = gaussian_matrix(m, d, rng);
    orthonormalize_columns(g);
    return g;
}

DenseMatrix generate_matrix(std::size_t m, std::size_t d, std::span<const double> spectrum,
                            CoherenceMode coherence, std::size_t planted_row,
                            std::uint64_t seed) {
    if (m < d) throw std::invalid_argument("generate_matrix: m must be >= d");
    if (spectrum.size() != d)
        throw std::invalid_argument("generate_matrix: spectrum length must equal d");
    for (double s : spectrum)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("generate_matrix: spectrum entries must be positive");
    if (coherence == CoherenceMode::planted && planted_row >= m)
        throw std::invalid_argument("generate_matrix: planted row out of range");

    Rng rng(derive_seed(seed, 0));
    DenseMatrix u = gaussian_matrix(m, d, rng);
    if (coherence == CoherenceMode::planted) {
        // Boosting one Gaussian row to norm ~ sqrt(m) concentrates roughly
        // half the available leverage on it after orthonormalization.
        const double boost = std::sqrt(static_cast<double>(m) / static_cast<double>(d));
        for (std::size_t j = 0; j < d; ++j) u(planted_row, j) *= boost;
    }
    orthonormalize_columns(u);

    Rng rng_v(derive_seed(seed, 1));
    DenseMatrix v = gaussian_matrix(d, d, rng_v);
    orthonormalize_columns(v);

    // A = U diag(spectrum) V^T
    DenseMatrix us = u;
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < m; ++i) us(i, j) *= spectrum[j];
    return multiply_abt(us, v);
}

}  // namespace rowsketch
