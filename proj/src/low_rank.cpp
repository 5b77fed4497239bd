#include "rowsketch/low_rank.hpp"

#include <algorithm>
#include <stdexcept>

#include "rowsketch/svd.hpp"
#include "rowsketch/tail_bounds.hpp"

namespace rowsketch {

namespace {

RankKProjector projector_from_sketch(const DenseMatrix& sketch, std::size_t k,
                                     std::size_t r_used, ProbabilityFamily family) {
    const SvdFactors f = svd(sketch);
    RankKProjector proj;
    proj.r_used = r_used;
    proj.dist_family = family;
    proj.reduced_k = f.rank() < k;
    proj.k = std::min(k, f.rank());
    if (proj.k == 0)
        throw std::invalid_argument("sampled_projector: sketch has rank zero");
    proj.v_k = left_columns(f.v, proj.k);
    return proj;
}

}  // namespace

RankKProjector sampled_projector(const DenseMatrix& a, std::size_t k, ReconstructionMode mode,
                                 double epsilon, double delta, std::uint64_t seed) {
    if (k == 0 || k > a.cols())
        throw std::invalid_argument("sampled_projector: k out of range");
    if (!(epsilon > 0.0) || epsilon >= 1.0 || !(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("sampled_projector: epsilon and delta must lie in (0, 1)");

    if (mode == ReconstructionMode::additive) {
        const SamplingDistribution dist = row_norm_probabilities(a);
        const SampleSizePlan plan =
            sample_size_symmetric(stable_rank(a), 1.0, epsilon, delta, a.cols());
        const RowSampleOperator op = draw_sample_operator(dist, plan.r, seed);
        return projector_from_sketch(apply_sample(op, a), k, plan.r, dist.family);
    }
    const SamplingDistribution dist = leverage_probabilities_exact(a);
    return sampled_projector_with_distribution(a, k, dist, epsilon, delta, seed);
}

RankKProjector sampled_projector_with_distribution(const DenseMatrix& a, std::size_t k,
                                                   const SamplingDistribution& dist,
                                                   double epsilon, double delta,
                                                   std::uint64_t seed) {
    if (k == 0 || k > a.cols())
        throw std::invalid_argument("sampled_projector: k out of range");
    if (dist.p.size() != a.rows())
        throw std::invalid_argument("sampled_projector: distribution length mismatch");
    const SampleSizePlan plan =
        sample_size_identity(a.cols(), dist.beta_certificate, epsilon, delta);
    const RowSampleOperator op = draw_sample_operator(dist, plan.r, seed);
    return projector_from_sketch(apply_sample(op, a), k, plan.r, dist.family);
}

double reconstruction_error(const DenseMatrix& a, const RankKProjector& proj) {
    if (proj.v_k.rows() != a.cols())
        throw std::invalid_argument("reconstruction_error: incompatible projector");
    // A - A V_k V_k^T
    const DenseMatrix av = multiply(a, proj.v_k);
    const DenseMatrix projected = multiply_abt(av, proj.v_k);
    return spectral_norm_exact(subtract(a, projected));
}

bool spectral_equivalence_check(const DenseMatrix& a, const DenseMatrix& a_tilde,
                                double epsilon) {
    if (a.cols() != a_tilde.cols())
        throw std::invalid_argument("spectral_equivalence_check: column counts differ");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("spectral_equivalence_check: epsilon must be positive");

    // Restrict to the row space of A: with x = V_k S_k^{-1} z,
    //   x^T A^T A x = z^T z   and   x^T A~^T A~ x = z^T M z,
    // so the Rayleigh ratios are the eigenvalues of
    //   M = S_k^{-1} V_k^T (A~^T A~) V_k S_k^{-1}.
    const SvdFactors f = svd(a);
    if (f.rank() == 0)
        throw std::invalid_argument("spectral_equivalence_check: zero matrix");
    const DenseMatrix sketch_v = multiply(a_tilde, f.v);  // r x k
    DenseMatrix scaled_sv = sketch_v;
    for (std::size_t j = 0; j < f.rank(); ++j) {
        const double inv = 1.0 / f.s[j];
        for (std::size_t i = 0; i < scaled_sv.rows(); ++i) scaled_sv(i, j) *= inv;
    }
    const DenseMatrix pencil = multiply_at_b(scaled_sv, scaled_sv);  // k x k PSD

    // Eigenvalues of a PSD matrix are its singular values.
    const SvdFactors pf = svd(pencil);
    const double hi = pf.rank() == 0 ? 0.0 : pf.s.front();
    double lo = 0.0;
    if (pf.rank() == f.rank())
        lo = pf.s.back();
    // A rank drop in the pencil means some direction collapsed to 0.
    return lo >= 1.0 - epsilon && hi <= 1.0 + epsilon;
}

}  // namespace rowsketch
