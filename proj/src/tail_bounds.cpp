#include "rowsketch/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rowsketch {

namespace {

void check_params(const BoundParams& p) {
    if (p.n < 1) throw std::invalid_argument("BoundParams: n must be positive");
    if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon))
        throw std::invalid_argument("BoundParams: epsilon must be positive and finite");
    if (!(p.gamma > 0.0)) throw std::invalid_argument("BoundParams: gamma must be positive");
    if (!(p.s2 > 0.0)) throw std::invalid_argument("BoundParams: s2 must be positive");
    if (p.d1 < 1 || p.d2 < 1)
        throw std::invalid_argument("BoundParams: dimensions must be positive");
}

double clamp_probability(double x) { return std::min(1.0, x); }

void check_rate_params(double beta, double epsilon, double delta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw std::invalid_argument("sample size: beta must lie in (0, 1]");
    if (!(epsilon > 0.0) || epsilon >= 1.0)
        throw std::invalid_argument("sample size: epsilon must lie in (0, 1)");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("sample size: delta must lie in (0, 1)");
}

std::size_t ceil_count(double x) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(x)));
}

}  // namespace

double scalar_chernoff_bound(const BoundParams& p) {
    check_params(p);
    const double n = static_cast<double>(p.n);
    return clamp_probability(2.0 * std::exp(-n * p.epsilon * p.epsilon / (2.0 * p.gamma * p.gamma)));
}

double scalar_bernstein_bound(const BoundParams& p) {
    check_params(p);
    const double n = static_cast<double>(p.n);
    const double denom = 2.0 * p.s2 + 2.0 * p.gamma * p.epsilon / 3.0;
    return clamp_probability(2.0 * std::exp(-n * p.epsilon * p.epsilon / denom));
}

double matrix_chernoff_bound(const BoundParams& p) {
    check_params(p);
    if (p.d1 != p.d2)
        throw std::invalid_argument("matrix_chernoff_bound: symmetric case requires d1 == d2");
    const double n = static_cast<double>(p.n);
    const double d = static_cast<double>(p.d1);
    return clamp_probability(2.0 * d *
                             std::exp(-n * p.epsilon * p.epsilon / (4.0 * p.gamma * p.gamma)));
}

double matrix_bernstein_bound(const BoundParams& p) {
    check_params(p);
    const double n = static_cast<double>(p.n);
    const double prefactor = static_cast<double>(p.d1 + p.d2);  // = 2d when symmetric
    const double denom = 2.0 * p.s2 + 2.0 * p.gamma * p.epsilon / 3.0;
    return clamp_probability(prefactor * std::exp(-n * p.epsilon * p.epsilon / denom));
}

SampleSizePlan sample_size_symmetric(double rho, double beta, double epsilon, double delta,
                                     std::size_t d) {
    check_rate_params(beta, epsilon, delta);
    if (!(rho >= 1.0)) throw std::invalid_argument("sample_size_symmetric: rho must be >= 1");
    if (d < 1) throw std::invalid_argument("sample_size_symmetric: d must be positive");
    SampleSizePlan plan{0, SampleSizeKind::symmetric, beta, epsilon, delta, {rho}, {d}};
    plan.r = recompute_sample_size(plan);
    return plan;
}

SampleSizePlan sample_size_identity(std::size_t d, double beta, double epsilon, double delta) {
    check_rate_params(beta, epsilon, delta);
    if (d < 1) throw std::invalid_argument("sample_size_identity: d must be positive");
    SampleSizePlan plan{0,      SampleSizeKind::identity,
                        beta,   epsilon,
                        delta,  {static_cast<double>(d) - beta},
                        {d}};
    plan.r = recompute_sample_size(plan);
    return plan;
}

SampleSizePlan sample_size_asymmetric(double rho1, double rho2, double beta, double epsilon,
                                      double delta, std::size_t d1, std::size_t d2) {
    check_rate_params(beta, epsilon, delta);
    if (!(rho1 >= 1.0) || !(rho2 >= 1.0))
        throw std::invalid_argument("sample_size_asymmetric: stable ranks must be >= 1");
    if (d1 < 1 || d2 < 1)
        throw std::invalid_argument("sample_size_asymmetric: dimensions must be positive");
    SampleSizePlan plan{0, SampleSizeKind::asymmetric, beta, epsilon, delta, {rho1, rho2}, {d1, d2}};
    plan.r = recompute_sample_size(plan);
    return plan;
}

std::size_t recompute_sample_size(const SampleSizePlan& plan) {
    const double eps2 = plan.epsilon * plan.epsilon;
    switch (plan.kind) {
        case SampleSizeKind::symmetric: {
            const double d = static_cast<double>(plan.dims.at(0));
            return ceil_count(4.0 * plan.rho_terms.at(0) / (plan.beta * eps2) *
                              std::log(2.0 * d / plan.delta));
        }
        case SampleSizeKind::identity: {
            const double d = static_cast<double>(plan.dims.at(0));
            return ceil_count(4.0 * plan.rho_terms.at(0) / (plan.beta * eps2) *
                              std::log(2.0 * d / plan.delta));
        }
        case SampleSizeKind::asymmetric: {
            const double dsum = static_cast<double>(plan.dims.at(0) + plan.dims.at(1));
            const double rsum = plan.rho_terms.at(0) + plan.rho_terms.at(1);
            return ceil_count(8.0 * rsum / (plan.beta * eps2) * std::log(2.0 * dsum / plan.delta));
        }
    }
    throw std::invalid_argument("recompute_sample_size: unknown kind");
}

double frobenius_baseline_bound(double rho1, double rho2, double beta, double epsilon,
                                std::size_t r) {
    if (!(rho1 > 0.0) || !(rho2 > 0.0) || !(beta > 0.0) || !(epsilon > 0.0) || r < 1)
        throw std::invalid_argument("frobenius_baseline_bound: inputs must be positive");
    const double rd = static_cast<double>(r);
    return std::exp(-rd * beta * beta * epsilon * epsilon / (16.0 * rho1 * rho2));
}

}  // namespace rowsketch
