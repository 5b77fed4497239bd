#pragma once

// Test-only oracles, kept independent of the library kernels they check:
// a two-sided Jacobi eigensolver for symmetric matrices, a long power
// iteration, and a naive densification of the subsampled Hadamard operator.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rowsketch/leverage_fjlt.hpp"
#include "rowsketch/matrix.hpp"
#include "rowsketch/rng.hpp"

namespace oracles {

// Eigenvalues of a symmetric matrix by cyclic two-sided Jacobi, descending.
inline std::vector<double> symmetric_eigenvalues(rowsketch::DenseMatrix s) {
    const std::size_t n = s.rows();
    double scale = 0.0;
    for (double v : s.data()) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(s(p, q)));
        if (off <= 1e-15 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(s(p, q)) <= 1e-18 * scale) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double sip = s(i, p), siq = s(i, q);
                    s(i, p) = c * sip - sn * siq;
                    s(i, q) = sn * sip + c * siq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double spj = s(p, j), sqj = s(q, j);
                    s(p, j) = c * spj - sn * sqj;
                    s(q, j) = sn * spj + c * sqj;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = s(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

// sigma_1(A) by a long deterministic power iteration on A^T A.
inline double power_iteration_top_singular(const rowsketch::DenseMatrix& a, std::size_t iters,
                                           std::uint64_t seed) {
    rowsketch::Rng rng(seed);
    std::vector<double> x(a.cols());
    for (double& v : x) v = rng.next_normal();
    double lambda = 0.0;
    for (std::size_t k = 0; k < iters; ++k) {
        std::vector<double> y = rowsketch::multiply_tvec(a, rowsketch::multiply_vec(a, x));
        lambda = rowsketch::vector_norm(y);
        if (lambda == 0.0) return 0.0;
        for (double& v : y) v /= lambda;
        x = std::move(y);
    }
    return std::sqrt(lambda);
}

inline rowsketch::DenseMatrix gaussian(std::size_t m, std::size_t d, std::uint64_t seed) {
    rowsketch::Rng rng(seed);
    rowsketch::DenseMatrix g(m, d);
    for (double& v : g.data()) v = rng.next_normal();
    return g;
}

// Entry of the unnormalized Walsh-Hadamard matrix of order n (power of two).
inline double hadamard_entry(std::size_t p, std::size_t q) {
    return std::popcount(p & q) % 2 == 0 ? 1.0 : -1.0;
}

// Dense r x m_logical materialization of scale * P * H * D from the
// operator's own descriptors.
inline rowsketch::DenseMatrix dense_fjlt(const rowsketch::FjltOperator& op) {
    rowsketch::DenseMatrix r(op.r_target, op.m_logical);
    const double norm = 1.0 / std::sqrt(static_cast<double>(op.m_padded));
    for (std::size_t j = 0; j < op.r_target; ++j)
        for (std::size_t i = 0; i < op.m_logical; ++i)
            r(j, i) = op.scale * norm * hadamard_entry(op.row_subset[j], i) *
                      static_cast<double>(op.sign_diagonal[i]);
    return r;
}

inline double max_abs_difference(const rowsketch::DenseMatrix& a,
                                 const rowsketch::DenseMatrix& b) {
    return rowsketch::max_abs(rowsketch::subtract(a, b));
}

// ||M - I|| in the spectral norm via the symmetric eigensolver.
inline double distance_from_identity(const rowsketch::DenseMatrix& m) {
    rowsketch::DenseMatrix shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= 1.0;
    const std::vector<double> eig = symmetric_eigenvalues(shifted);
    double norm = 0.0;
    for (double v : eig) norm = std::max(norm, std::abs(v));
    return norm;
}

}  // namespace oracles
