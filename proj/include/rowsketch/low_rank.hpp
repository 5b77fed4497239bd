#pragma once

#include <cstdint>

#include "rowsketch/matrix.hpp"
#include "rowsketch/row_sampler.hpp"

namespace rowsketch {

// Projector onto the top-k right singular subspace of a sampled sketch,
// stored through its orthonormal basis V_k (d x k).
struct RankKProjector {
    DenseMatrix v_k;
    std::size_t k = 0;
    std::size_t r_used = 0;
    ProbabilityFamily dist_family = ProbabilityFamily::row_norm;
    // Set when the sketch's numerical rank fell below the requested k and
    // the projector was truncated to the achievable k.
    bool reduced_k = false;
};

enum class ReconstructionMode {
    additive,  // row-norm sampling; additive spectral error
    relative,  // leverage sampling; relative error for every k at once
};

// Samples A and returns the projector onto the sketch's top-k right singular
// vectors. Relative mode uses exact leverage probabilities.
RankKProjector sampled_projector(const DenseMatrix& a, std::size_t k, ReconstructionMode mode,
                                 double epsilon, double delta, std::uint64_t seed);

// Same, but under a caller-supplied leverage-type distribution; its
// beta_certificate enters the sample-size formula (the approximate-leverage
// pathway).
RankKProjector sampled_projector_with_distribution(const DenseMatrix& a, std::size_t k,
                                                   const SamplingDistribution& dist,
                                                   double epsilon, double delta,
                                                   std::uint64_t seed);

// ||A - A Pi_k|| in the spectral norm.
double reconstruction_error(const DenseMatrix& a, const RankKProjector& proj);

// True iff (1-eps) x^T A^T A x <= x^T A~^T A~ x <= (1+eps) x^T A^T A x for
// all x, certified on the row space of A by the eigenvalues of the pencil of
// the two Gram forms.
bool spectral_equivalence_check(const DenseMatrix& a, const DenseMatrix& a_tilde,
                                double epsilon);

}  // namespace rowsketch
