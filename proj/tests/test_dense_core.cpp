#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rowsketch/errors.hpp"
#include "rowsketch/rng.hpp"
#include "rowsketch/svd.hpp"
#include "support/oracles.hpp"

using namespace rowsketch;

namespace {

void check_factor_invariants(const DenseMatrix& a, const SvdFactors& f) {
    // Orthonormality of both factors.
    CHECK(oracles::distance_from_identity(multiply_at_b(f.u, f.u)) <= 1e-10);
    CHECK(oracles::distance_from_identity(multiply_at_b(f.v, f.v)) <= 1e-10);
    // Strictly positive, non-increasing spectrum.
    for (std::size_t j = 0; j < f.s.size(); ++j) {
        CHECK(f.s[j] > 0.0);
        if (j > 0) CHECK(f.s[j] <= f.s[j - 1]);
    }
    // Reconstruction.
    DenseMatrix us = f.u;
    for (std::size_t j = 0; j < f.rank(); ++j)
        for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= f.s[j];
    const DenseMatrix rec = multiply_abt(us, f.v);
    CHECK(frobenius_norm(subtract(rec, a)) <= 1e-8 * frobenius_norm(a));
}

}  // namespace

TEST_CASE("svd of diagonal and permutation matrices") {
    const DenseMatrix diag = DenseMatrix::from_rows({{3.0, 0.0}, {0.0, 1.0}});
    const SvdFactors f = svd(diag);
    REQUIRE(f.rank() == 2);
    CHECK(f.s[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.s[1] == doctest::Approx(1.0).epsilon(1e-14));
    // Sign convention makes the factors exactly the identity here.
    CHECK(oracles::max_abs_difference(f.u, DenseMatrix::identity(2)) <= 1e-14);
    CHECK(oracles::max_abs_difference(f.v, DenseMatrix::identity(2)) <= 1e-14);

    const DenseMatrix perm = DenseMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const SvdFactors fp = svd(perm);
    REQUIRE(fp.rank() == 2);
    CHECK(fp.s[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fp.s[1] == doctest::Approx(1.0).epsilon(1e-14));
    check_factor_invariants(perm, fp);
}

TEST_CASE("svd of random matrices matches the Gram eigendecomposition") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const DenseMatrix a = oracles::gaussian(6, 3, seed);
        const SvdFactors f = svd(a);
        REQUIRE(f.rank() == 3);
        check_factor_invariants(a, f);

        // sigma_i^2 against eigenvalues of A^T A from the independent solver.
        const std::vector<double> eig = oracles::symmetric_eigenvalues(multiply_at_b(a, a));
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(f.s[i] * f.s[i] == doctest::Approx(eig[i]).epsilon(1e-8));
    }
}

TEST_CASE("svd handles wide and rank-deficient inputs") {
    const DenseMatrix wide = DenseMatrix::from_rows({{3.0, 4.0}});
    const SvdFactors f = svd(wide);
    REQUIRE(f.rank() == 1);
    CHECK(f.s[0] == doctest::Approx(5.0).epsilon(1e-14));

    // Duplicate rows: rank 1 out of 2 columns.
    const DenseMatrix dup = DenseMatrix::from_rows({{1.0, 2.0}, {1.0, 2.0}, {2.0, 4.0}});
    const SvdFactors fd = svd(dup);
    CHECK(fd.rank() == 1);
    check_factor_invariants(dup, fd);
}

TEST_CASE("svd input validation") {
    CHECK_THROWS_AS(svd(DenseMatrix{}), std::invalid_argument);
    DenseMatrix bad(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(bad), std::invalid_argument);
}

TEST_CASE("pseudo_inverse on exact and random inputs") {
    CHECK(oracles::max_abs_difference(pseudo_inverse(DenseMatrix::identity(3)),
                                      DenseMatrix::identity(3)) <= 1e-14);

    const DenseMatrix d = DenseMatrix::from_rows({{2.0, 0.0}, {0.0, 0.5}});
    const DenseMatrix dinv = pseudo_inverse(d);
    CHECK(dinv(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dinv(1, 1) == doctest::Approx(2.0).epsilon(1e-14));

    const DenseMatrix a = oracles::gaussian(8, 3, 21);
    const DenseMatrix pinv = pseudo_inverse(a);
    CHECK(oracles::max_abs_difference(multiply(pinv, a), DenseMatrix::identity(3)) <= 1e-9);
}

TEST_CASE("pseudo_inverse satisfies the Moore-Penrose identities") {
    for (std::uint64_t seed : {31u, 32u}) {
        const DenseMatrix a = oracles::gaussian(7, 4, seed);
        const DenseMatrix p = pseudo_inverse(a);
        const DenseMatrix apa = multiply(a, multiply(p, a));
        const DenseMatrix pap = multiply(p, multiply(a, p));
        CHECK(frobenius_norm(subtract(apa, a)) <= 1e-8 * frobenius_norm(a));
        CHECK(frobenius_norm(subtract(pap, p)) <= 1e-8 * frobenius_norm(p));
    }
}

TEST_CASE("spectral_norm_exact") {
    CHECK(spectral_norm_exact(DenseMatrix::from_rows({{2.0, 0.0}, {0.0, 1.0}})) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spectral_norm_exact(DenseMatrix::from_rows({{3.0, 4.0}})) ==
          doctest::Approx(5.0).epsilon(1e-14));

    const DenseMatrix a = oracles::gaussian(10, 4, 41);
    const double oracle = oracles::power_iteration_top_singular(a, 2000, 7);
    CHECK(spectral_norm_exact(a) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("frobenius_norm") {
    CHECK(frobenius_norm(DenseMatrix::from_rows({{3.0, 4.0}})) == doctest::Approx(5.0));
    CHECK(frobenius_norm(DenseMatrix::identity(9)) == doctest::Approx(3.0));

    const DenseMatrix a = oracles::gaussian(6, 5, 51);
    const SvdFactors f = svd(a);
    double sum = 0.0;
    for (double s : f.s) sum += s * s;
    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(sum)).epsilon(1e-10));
}

TEST_CASE("stable_rank") {
    CHECK(stable_rank(DenseMatrix::identity(5)) == doctest::Approx(5.0));
    CHECK(stable_rank(DenseMatrix::from_rows({{2.0, 0.0}, {0.0, 1.0}})) ==
          doctest::Approx(1.25));
    CHECK_THROWS_AS(stable_rank(DenseMatrix(3, 3)), std::invalid_argument);

    const DenseMatrix a = oracles::gaussian(12, 5, 61);
    const double rho = stable_rank(a);
    CHECK(rho >= 1.0);
    CHECK(rho <= static_cast<double>(svd(a).rank()) + 1e-12);
}

TEST_CASE("condition_number") {
    const std::vector<double> s1 = {3.0, 1.0};
    CHECK(condition_number(s1) == doctest::Approx(3.0));
    const std::vector<double> s2 = {1.0, 1.0, 1.0};
    CHECK(condition_number(s2) == doctest::Approx(1.0));
    const std::vector<double> s3 = {5.0, 2.0, 0.1};
    CHECK(condition_number(s3) == doctest::Approx(50.0));
    const std::vector<double> bad = {1.0, 0.0};
    CHECK_THROWS_AS(condition_number(bad), std::invalid_argument);
}

TEST_CASE("best_rank_k basics") {
    const DenseMatrix diag = DenseMatrix::from_rows({{3.0, 0.0}, {0.0, 1.0}});
    const DenseMatrix truncated = best_rank_k(diag, 1);
    CHECK(truncated(0, 0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(truncated(1, 1)) <= 1e-14);

    const DenseMatrix a = oracles::gaussian(6, 4, 71);
    CHECK(oracles::max_abs_difference(best_rank_k(a, 4), a) == 0.0);  // k = d returns A itself
    CHECK_THROWS_AS(best_rank_k(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(best_rank_k(a, 5), std::invalid_argument);

    const SvdFactors f = svd(a);
    const double err = spectral_norm_exact(subtract(a, best_rank_k(a, 2)));
    CHECK(err == doctest::Approx(f.s[2]).epsilon(1e-9));
}

TEST_CASE("best_rank_k optimality against random rank-k candidates") {
    const DenseMatrix a = oracles::gaussian(6, 4, 81);
    const std::size_t k = 2;
    const double best = spectral_norm_exact(subtract(a, best_rank_k(a, k)));
    Rng rng(82);
    for (int trial = 0; trial < 50; ++trial) {
        // Rank-k candidate: perturb A by a random rank-1 bump, then truncate.
        DenseMatrix bump(6, 4);
        std::vector<double> left(6), right(4);
        for (double& v : left) v = rng.next_normal();
        for (double& v : right) v = rng.next_normal();
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 4; ++j) bump(i, j) = 0.3 * left[i] * right[j];
        const DenseMatrix candidate = best_rank_k(add(a, bump), k);
        CHECK(best <= spectral_norm_exact(subtract(a, candidate)) + 1e-9);
    }
}
