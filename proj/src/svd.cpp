#include "rowsketch/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rowsketch/errors.hpp"

namespace rowsketch {

namespace {

constexpr int kMaxSweeps = 60;
// A column pair counts as decoupled when |a_p . a_q| <= tol * |a_p| |a_q|.
constexpr double kOrthTol = 1e-14;

double column_dot(const DenseMatrix& w, std::size_t p, std::size_t q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) sum += w(i, p) * w(i, q);
    return sum;
}

void rotate_columns(DenseMatrix& w, std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t i = 0; i < w.rows(); ++i) {
        const double wp = w(i, p);
        const double wq = w(i, q);
        w(i, p) = c * wp - s * wq;
        w(i, q) = s * wp + c * wq;
    }
}

// Orthogonalizes the columns of w by Jacobi rotations, accumulating the
// rotations into v. Returns false if the sweep budget runs out.
bool jacobi_orthogonalize(DenseMatrix& w, DenseMatrix& v) {
    const std::size_t n = w.cols();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = column_dot(w, p, p);
                const double beta = column_dot(w, q, q);
                const double gamma = column_dot(w, p, q);
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= kOrthTol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_columns(w, p, q, c, s);
                rotate_columns(v, p, q, c, s);
            }
        }
        if (!rotated) return true;
    }
    return false;
}

}  // namespace

double rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * sigma_max * 1e-12;
}

SvdFactors svd(const DenseMatrix& a) {
    if (a.empty()) throw std::invalid_argument("svd: empty matrix");
    if (!all_finite(a)) throw std::invalid_argument("svd: non-finite entry");

    // Work on the tall orientation; swap factors back afterwards.
    const bool wide = a.rows() < a.cols();
    DenseMatrix w = wide ? transposed(a) : a;
    DenseMatrix rot = DenseMatrix::identity(w.cols());

    if (!jacobi_orthogonalize(w, rot))
        throw numerical_error("svd: Jacobi sweeps did not converge");

    const std::size_t n = w.cols();
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(column_dot(w, j, j));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    const double sigma_max = sigma[order[0]];
    const double tol = rank_tolerance(a.rows(), a.cols(), sigma_max);
    std::size_t k = 0;
    while (k < n && sigma[order[k]] > tol) ++k;

    SvdFactors f;
    f.s.resize(k);
    if (k > 0) {
        DenseMatrix left(w.rows(), k);
        DenseMatrix right(n, k);
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t src = order[j];
            f.s[j] = sigma[src];
            const double inv = 1.0 / sigma[src];
            for (std::size_t i = 0; i < w.rows(); ++i) left(i, j) = w(i, src) * inv;
            for (std::size_t i = 0; i < n; ++i) right(i, j) = rot(i, src);
        }
        f.u = wide ? std::move(right) : std::move(left);
        f.v = wide ? std::move(left) : std::move(right);

        // Sign convention: first nonzero entry of each U column non-negative.
        for (std::size_t j = 0; j < k; ++j) {
            double lead = 0.0;
            for (std::size_t i = 0; i < f.u.rows(); ++i) {
                if (f.u(i, j) != 0.0) {
                    lead = f.u(i, j);
                    break;
                }
            }
            if (lead < 0.0) {
                for (std::size_t i = 0; i < f.u.rows(); ++i) f.u(i, j) = -f.u(i, j);
                for (std::size_t i = 0; i < f.v.rows(); ++i) f.v(i, j) = -f.v(i, j);
            }
        }
    }
    return f;
}

DenseMatrix pseudo_inverse(const DenseMatrix& a) {
    const SvdFactors f = svd(a);
    DenseMatrix out(a.cols(), a.rows());
    if (f.rank() == 0) return out;  // pseudo-inverse of 0 is 0
    DenseMatrix v_scaled = f.v;
    for (std::size_t j = 0; j < f.rank(); ++j) {
        const double inv = 1.0 / f.s[j];
        for (std::size_t i = 0; i < v_scaled.rows(); ++i) v_scaled(i, j) *= inv;
    }
    return multiply_abt(v_scaled, f.u);
}

double spectral_norm_exact(const DenseMatrix& a) {
    const SvdFactors f = svd(a);
    return f.rank() == 0 ? 0.0 : f.s.front();
}

double stable_rank(const DenseMatrix& a) {
    const double top = spectral_norm_exact(a);
    if (top == 0.0) throw std::invalid_argument("stable_rank: zero matrix");
    const double fro = frobenius_norm(a);
    return (fro * fro) / (top * top);
}

double condition_number(std::span<const double> s) {
    if (s.empty()) throw std::invalid_argument("condition_number: empty spectrum");
    double lo = s[0], hi = s[0];
    for (double v : s) {
        if (!(v > 0.0)) throw std::invalid_argument("condition_number: non-positive entry");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi / lo;
}

DenseMatrix best_rank_k(const DenseMatrix& a, std::size_t k) {
    if (k == 0 || k > a.cols())
        throw std::invalid_argument("best_rank_k: k out of range");
    const SvdFactors f = svd(a);
    if (k >= f.rank()) return a;
    DenseMatrix uk = left_columns(f.u, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < uk.rows(); ++i) uk(i, j) *= f.s[j];
    return multiply_abt(uk, left_columns(f.v, k));
}

}  // namespace rowsketch
