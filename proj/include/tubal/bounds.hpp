#pragma once

#include <string>
#include <vector>

#include "tubal/sketch.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Per-Fourier-slice singular values of a tensor, mirrored to the full depth.
/// The gap at rank R is sigma_{R+1}/sigma_R, defined as 0 when sigma_R = 0
/// (the tail is then also 0 and the slice term vanishes).
struct SpectralProfile {
    Index rows = 0, cols = 0, depth = 0;
    std::vector<Eigen::VectorXd> slices;  // one descending vector per slice, full depth

    /// sum_{j > rank} sigma_j^2 within one slice (rank counts kept values).
    double tail_energy(Index slice, Index rank) const;
    double gap(Index slice, Index rank) const;
};

SpectralProfile spectral_profile(const Tensor3& x);

/// Expected squared-error bound for the matrix subspace method with power
/// iteration q: (1 + (R/(P-1)) tau_R^{4q}) * tail. Requires P >= 2.
double bound_matrix_even(const Eigen::VectorXd& singular_values, Index rank, Index oversample,
                         int power_iters);

/// Expected squared-error bound for the matrix pass-budget method with odd
/// pass count v: (1 + (R/(P-1)) tau_R^{2(2v-1)}) * tail. Requires P >= 2, v odd.
double bound_matrix_odd(const Eigen::VectorXd& singular_values, Index rank, Index oversample,
                        int passes);

/// Expected (un-squared) Frobenius-error bound for the tensor subspace method:
/// sqrt((1/I3) sum_i (1 + (R/(P-1)) tau_i^{4q}) tail_i).
double bound_tensor_even(const SpectralProfile& profile, Index rank, Index oversample,
                         int power_iters);

/// Odd-pass tensor analog with exponent 2(2v - 1).
double bound_tensor_odd(const SpectralProfile& profile, Index rank, Index oversample, int passes);

/// Deterministic per-draw bound ||Sigma2||_F^2 + tau^{2(2v-1)} ||Sigma2 Omega2
/// Omega1^+||_F^2 for a concrete test-matrix split (Omega1 = V1^T Omega must
/// have full row rank).
double bound_deterministic_sketch(const Eigen::VectorXd& singular_values, Index rank,
                                  Index oversample, int v, const Eigen::MatrixXd& omega1,
                                  const Eigen::MatrixXd& omega2);

/// One theorem-vs-experiment comparison. Matrix bounds are reported as square
/// roots so every `bound` field is an un-squared Frobenius error.
struct BoundReport {
    int theorem = 0;  // 1..4
    Index rank = 0;
    Index oversample = 0;
    int q_or_v = 0;
    int trials = 0;
    double bound = 0.0;
    double mc_mean = 0.0;
    double mc_stddev = 0.0;
    double slack = 0.0;  // 3 * stddev / sqrt(trials)
    bool satisfied = false;

    static std::string csv_header();
    std::string csv_row() const;
    std::string to_json() const;
};

/// Runs the algorithm matching `theorem` `trials` times with per-trial seeds
/// derived from plan.seed and compares the sample-mean Frobenius error with
/// the theorem's bound. Theorems 1 and 3 need plan.power_iters; theorems 2
/// and 4 need an odd plan.passes; theorems 1 and 2 require depth-1 input.
BoundReport monte_carlo_validate(const Tensor3& x, const SketchPlan& plan, int theorem,
                                 int trials);

}  // namespace tubal
