#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rowsketch {

// Parameters of a tail bound on Z_n = (1/n) sum of n i.i.d. centered
// variables (scalar or matrix valued): deviation epsilon, almost-sure bound
// gamma, variance bound s2, and matrix dimensions d1 x d2 (d1 = d2 = d in the
// symmetric case, both 1 for scalars).
struct BoundParams {
    std::int64_t n = 1;
    double epsilon = 0.0;
    double gamma = 1.0;
    double s2 = 1.0;
    std::size_t d1 = 1;
    std::size_t d2 = 1;
};

// Failure-probability evaluators; results are clamped to [0, 1].
double scalar_chernoff_bound(const BoundParams& p);   // 2 exp(-n e^2 / 2 g^2)
double scalar_bernstein_bound(const BoundParams& p);  // 2 exp(-n e^2 / (2 s^2 + 2 g e / 3))
double matrix_chernoff_bound(const BoundParams& p);   // 2d exp(-n e^2 / 4 g^2)
double matrix_bernstein_bound(const BoundParams& p);  // (d1+d2) exp(-n e^2 / (2 s^2 + 2 g e / 3))

enum class SampleSizeKind { symmetric, identity, asymmetric };

// A sample count r together with the parameters that generated it, so the
// generating formula can be re-evaluated from the stored fields.
struct SampleSizePlan {
    std::size_t r = 0;
    SampleSizeKind kind = SampleSizeKind::symmetric;
    double beta = 1.0;
    double epsilon = 0.5;
    double delta = 0.1;
    std::vector<double> rho_terms;    // one or two effective dimensions
    std::vector<std::size_t> dims;    // one or two matrix dimensions
};

// r = ceil((4 rho / (beta eps^2)) ln(2d / delta))
SampleSizePlan sample_size_symmetric(double rho, double beta, double epsilon, double delta,
                                     std::size_t d);
// r = ceil((4 (d - beta) / (beta eps^2)) ln(2d / delta))
SampleSizePlan sample_size_identity(std::size_t d, double beta, double epsilon, double delta);
// r = ceil((8 (rho1 + rho2) / (beta eps^2)) ln(2 (d1 + d2) / delta))
SampleSizePlan sample_size_asymmetric(double rho1, double rho2, double beta, double epsilon,
                                      double delta, std::size_t d1, std::size_t d2);

// Re-evaluates the plan's generating formula from its stored fields.
std::size_t recompute_sample_size(const SampleSizePlan& plan);

// exp(-r beta^2 eps^2 / (16 rho1 rho2)): the quadratic-dependence baseline
// the Bernstein-route sample sizes are compared against.
double frobenius_baseline_bound(double rho1, double rho2, double beta, double epsilon,
                                std::size_t r);

}  // namespace rowsketch
