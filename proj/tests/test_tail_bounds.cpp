#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "rowsketch/rng.hpp"
#include "rowsketch/tail_bounds.hpp"

using namespace rowsketch;

namespace {

// |mean of n Rademacher signs| drawn from the bit stream.
double rademacher_mean_abs(std::size_t n, Rng& rng) {
    long long sum = 0;
    std::size_t left = n;
    while (left >= 64) {
        sum += 2 * std::popcount(rng.next_u64()) - 64;
        left -= 64;
    }
    if (left > 0) {
        const std::uint64_t bits = rng.next_u64() & ((std::uint64_t{1} << left) - 1);
        sum += 2 * std::popcount(bits) - static_cast<long long>(left);
    }
    return std::abs(static_cast<double>(sum)) / static_cast<double>(n);
}

double binomial_slack(double p, std::size_t trials) {
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

BoundParams params(std::int64_t n, double eps, double gamma = 1.0, double s2 = 1.0,
                   std::size_t d1 = 1, std::size_t d2 = 1) {
    BoundParams p;
    p.n = n;
    p.epsilon = eps;
    p.gamma = gamma;
    p.s2 = s2;
    p.d1 = d1;
    p.d2 = d2;
    return p;
}

}  // namespace

TEST_CASE("scalar Chernoff bound formula") {
    CHECK(scalar_chernoff_bound(params(100, 0.5)) ==
          doctest::Approx(2.0 * std::exp(-12.5)).epsilon(1e-12));
    // Vacuous deviation clamps to 1.
    CHECK(scalar_chernoff_bound(params(100, 1e-12)) == 1.0);
    CHECK_THROWS_AS(scalar_chernoff_bound(params(0, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(scalar_chernoff_bound(params(10, -1.0)), std::invalid_argument);
}

TEST_CASE("scalar Chernoff dominates the Rademacher-mean tail") {
    // The spec's simulation point: n = 1e5 signs per variate, 1e5 trials.
    const std::size_t n = 100000, trials = 100000;
    const double eps = 0.02;
    Rng rng(2024);
    std::size_t exceed = 0;
    for (std::size_t t = 0; t < trials; ++t)
        if (rademacher_mean_abs(n, rng) > eps) ++exceed;
    const double empirical = static_cast<double>(exceed) / static_cast<double>(trials);
    CHECK(empirical <= scalar_chernoff_bound(params(n, eps)) + binomial_slack(empirical, trials));
}

TEST_CASE("scalar Bernstein bound formula and simplified form") {
    CHECK(scalar_bernstein_bound(params(100, 0.5)) ==
          doctest::Approx(2.0 * std::exp(-25.0 / (2.0 + 1.0 / 3.0))).epsilon(1e-12));
    // For s2 = gamma^2 and eps <= 3 s2 / gamma the printed simplification
    // 2 exp(-n eps^2 / 4 s^2) is an upper bound.
    for (double eps : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const double full = scalar_bernstein_bound(params(50, eps));
        const double simple = std::min(1.0, 2.0 * std::exp(-50.0 * eps * eps / 4.0));
        CHECK(full <= simple + 1e-15);
    }
}

TEST_CASE("scalar Bernstein dominates a bounded zero-mean tail") {
    // Uniform on [-1, 1]: gamma = 1, variance 1/3.
    const std::size_t n = 200, trials = 20000;
    const double eps = 0.1;
    Rng rng(7);
    std::size_t exceed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += 2.0 * rng.next_double() - 1.0;
        if (std::abs(sum) / static_cast<double>(n) > eps) ++exceed;
    }
    const double empirical = static_cast<double>(exceed) / static_cast<double>(trials);
    const double bound = scalar_bernstein_bound(params(n, eps, 1.0, 1.0 / 3.0));
    CHECK(empirical <= bound + binomial_slack(empirical, trials));
}

TEST_CASE("matrix Chernoff bound formula") {
    CHECK(matrix_chernoff_bound(params(1000, 0.5, 1.0, 1.0, 10, 10)) ==
          doctest::Approx(20.0 * std::exp(-62.5)).epsilon(1e-12));
    // Dimension 1 keeps the scalar bound below it (weaker exponent constant).
    CHECK(scalar_chernoff_bound(params(50, 0.3)) <=
          matrix_chernoff_bound(params(50, 0.3, 1.0, 1.0, 1, 1)));
    CHECK_THROWS_AS(matrix_chernoff_bound(params(10, 0.5, 1.0, 1.0, 3, 5)),
                    std::invalid_argument);
}

TEST_CASE("matrix bounds dominate the random sign-diagonal ensemble") {
    // Z_n = (1/n) sum of diagonal +-1 matrices; ||Z_n|| = max_j |mean_j|.
    const std::size_t d = 4, n = 50, trials = 10000;
    const double eps = 0.45;
    Rng rng(99);
    std::size_t exceed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        double norm = 0.0;
        for (std::size_t j = 0; j < d; ++j) norm = std::max(norm, rademacher_mean_abs(n, rng));
        if (norm > eps) ++exceed;
    }
    const double empirical = static_cast<double>(exceed) / static_cast<double>(trials);
    const double chernoff = matrix_chernoff_bound(params(n, eps, 1.0, 1.0, d, d));
    const double bernstein = matrix_bernstein_bound(params(n, eps, 1.0, 1.0, d, d));
    CHECK(empirical <= chernoff + binomial_slack(empirical, trials));
    CHECK(empirical <= bernstein + binomial_slack(empirical, trials));
}

TEST_CASE("matrix Bernstein bound formula, symmetric and rectangular") {
    CHECK(matrix_bernstein_bound(params(100, 0.5, 1.0, 1.0, 2, 2)) ==
          doctest::Approx(4.0 * std::exp(-25.0 / (2.0 + 1.0 / 3.0))).epsilon(1e-12));
    // Rectangular prefactor d1 + d2.
    const double rect = matrix_bernstein_bound(params(100, 0.5, 1.0, 1.0, 3, 5));
    CHECK(rect == doctest::Approx(8.0 * std::exp(-25.0 / (2.0 + 1.0 / 3.0))).epsilon(1e-12));
}

TEST_CASE("bound evaluators are monotone over parameter grids") {
    const std::int64_t ns[] = {10, 50, 250};
    const double epss[] = {0.1, 0.3, 0.9};
    const double gammas[] = {0.5, 1.0, 2.0};
    const double s2s[] = {0.25, 1.0, 4.0};
    const std::size_t ds[] = {1, 4, 16};
    auto evaluators = {scalar_chernoff_bound, scalar_bernstein_bound, matrix_chernoff_bound,
                       matrix_bernstein_bound};
    for (auto eval : evaluators) {
        for (double g : gammas)
            for (double s2 : s2s)
                for (std::size_t d : ds) {
                    // Non-increasing in n and eps.
                    for (std::size_t i = 0; i + 1 < 3; ++i) {
                        CHECK(eval(params(ns[i + 1], 0.3, g, s2, d, d)) <=
                              eval(params(ns[i], 0.3, g, s2, d, d)) + 1e-15);
                        CHECK(eval(params(50, epss[i + 1], g, s2, d, d)) <=
                              eval(params(50, epss[i], g, s2, d, d)) + 1e-15);
                    }
                }
        // Non-decreasing in gamma, s2, d.
        for (std::size_t i = 0; i + 1 < 3; ++i) {
            CHECK(eval(params(50, 0.3, gammas[i], 1.0, 4, 4)) <=
                  eval(params(50, 0.3, gammas[i + 1], 1.0, 4, 4)) + 1e-15);
            CHECK(eval(params(50, 0.3, 1.0, s2s[i], 4, 4)) <=
                  eval(params(50, 0.3, 1.0, s2s[i + 1], 4, 4)) + 1e-15);
            CHECK(eval(params(50, 0.3, 1.0, 1.0, ds[i], ds[i])) <=
                  eval(params(50, 0.3, 1.0, 1.0, ds[i + 1], ds[i + 1])) + 1e-15);
        }
    }
}

TEST_CASE("sample sizes reproduce the worked values") {
    CHECK(sample_size_symmetric(4.0, 1.0, 0.5, 0.1, 10).r == 340);
    CHECK(sample_size_identity(10, 1.0, 0.5, 0.1).r == 763);
    CHECK(sample_size_asymmetric(2.0, 2.0, 1.0, 0.5, 0.1, 5, 5).r == 679);
}

TEST_CASE("sample size domain checks and scaling") {
    CHECK_THROWS_AS(sample_size_symmetric(0.5, 1.0, 0.5, 0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_symmetric(4.0, 0.0, 0.5, 0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_symmetric(4.0, 1.0, 1.5, 0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_symmetric(4.0, 1.0, 0.5, 0.0, 10), std::invalid_argument);
    // beta = d > 1 is rejected by the beta domain itself.
    CHECK_THROWS_AS(sample_size_identity(10, 10.0, 0.5, 0.1), std::invalid_argument);

    // Halving eps quadruples r up to the ceilings.
    const std::size_t r_half = sample_size_symmetric(4.0, 1.0, 0.5, 0.1, 10).r;
    const std::size_t r_quarter = sample_size_symmetric(4.0, 1.0, 0.25, 0.1, 10).r;
    CHECK(r_quarter <= 4 * r_half);
    CHECK(r_quarter + 4 >= 4 * r_half);

    // Monotone in the stable ranks.
    CHECK(sample_size_asymmetric(2.0, 2.0, 1.0, 0.5, 0.1, 5, 5).r <=
          sample_size_asymmetric(3.0, 2.0, 1.0, 0.5, 0.1, 5, 5).r);
}

TEST_CASE("sample sizes are monotone over parameter grids") {
    const double epss[] = {0.2, 0.4, 0.8};
    const double betas[] = {0.2, 0.5, 1.0};
    const double deltas[] = {0.05, 0.1, 0.3};
    const double rhos[] = {1.0, 3.0, 9.0};
    const std::size_t ds[] = {2, 8, 32};
    for (std::size_t i = 0; i + 1 < 3; ++i) {
        CHECK(sample_size_symmetric(3.0, 1.0, epss[i + 1], 0.1, 8).r <=
              sample_size_symmetric(3.0, 1.0, epss[i], 0.1, 8).r);
        CHECK(sample_size_symmetric(3.0, betas[i + 1], 0.5, 0.1, 8).r <=
              sample_size_symmetric(3.0, betas[i], 0.5, 0.1, 8).r);
        CHECK(sample_size_symmetric(rhos[i], 1.0, 0.5, 0.1, 8).r <=
              sample_size_symmetric(rhos[i + 1], 1.0, 0.5, 0.1, 8).r);
        CHECK(sample_size_symmetric(3.0, 1.0, 0.5, deltas[i + 1], 8).r <=
              sample_size_symmetric(3.0, 1.0, 0.5, deltas[i], 8).r);
        CHECK(sample_size_symmetric(3.0, 1.0, 0.5, 0.1, ds[i]).r <=
              sample_size_symmetric(3.0, 1.0, 0.5, 0.1, ds[i + 1]).r);
        CHECK(sample_size_identity(ds[i], 1.0, 0.5, 0.1).r <=
              sample_size_identity(ds[i + 1], 1.0, 0.5, 0.1).r);
    }
}

TEST_CASE("plans re-evaluate to their stored r") {
    const SampleSizePlan plans[] = {
        sample_size_symmetric(4.0, 1.0, 0.5, 0.1, 10),
        sample_size_symmetric(2.5, 0.3, 0.2, 0.05, 7),
        sample_size_identity(10, 1.0, 0.5, 0.1),
        sample_size_identity(3, 0.8, 0.7, 0.2),
        sample_size_asymmetric(2.0, 2.0, 1.0, 0.5, 0.1, 5, 5),
        sample_size_asymmetric(1.5, 6.0, 0.4, 0.3, 0.02, 3, 12),
    };
    for (const SampleSizePlan& plan : plans) CHECK(recompute_sample_size(plan) == plan.r);
}

TEST_CASE("Frobenius baseline bound") {
    CHECK(frobenius_baseline_bound(2.0, 2.0, 1.0, 0.5, 679) ==
          doctest::Approx(std::exp(-679.0 * 0.25 / 64.0)).epsilon(1e-12));
    CHECK(frobenius_baseline_bound(2.0, 2.0, 1.0, 0.5, 679) == doctest::Approx(0.0704).epsilon(1e-2));
    for (std::size_t r : {1u, 10u, 1000u}) {
        const double v = frobenius_baseline_bound(1.5, 2.5, 0.7, 0.3, r);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // At the Bernstein-route r, the quadratic baseline's exponent falls short
    // of the magnitude the target delta requires.
    const std::size_t r = sample_size_asymmetric(2.0, 2.0, 1.0, 0.5, 0.1, 5, 5).r;
    const double baseline_exponent = -std::log(frobenius_baseline_bound(2.0, 2.0, 1.0, 0.5, r));
    const double bernstein_exponent = std::log(2.0 * 10.0 / 0.1);
    CHECK(baseline_exponent < bernstein_exponent);
}
