#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tubal/sketch.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Low-rank operator used for the imputation step.
enum class LowRankOperator {
    PassEfficient,       // pass-budgeted tensor sketch (default)
    ClassicalSubspace,   // tensor subspace iteration, q = max(0, (v-2)/2)
    ExactTsvd,           // truncated tubal SVD
    MatrixPasses,        // pass-budgeted sketch on the I1 x (I2*I3) flattening
};

struct CompletionConfig {
    std::vector<Index> rank_schedule;  // non-decreasing, each >= 1
    Index oversample = 10;
    int passes = 2;
    std::uint64_t seed = 0;
    int max_iters_per_stage = 500;
    double tol = 1e-6;  // relative change of successive iterates
    LowRankOperator op = LowRankOperator::PassEfficient;
    /// Optional pre-step applied to the iterate before the low-rank operator;
    /// identity when empty.
    std::function<Tensor3(const Tensor3&)> smoothing;
};

struct IterationRecord {
    int stage = 0;
    Index rank = 0;
    int iteration = 0;       // 1-based within the stage
    double rel_change = 0.0;
    double observed_fit = 0.0;  // ||P_Omega(X_n) - P_Omega(M)||_F before masking
};

struct CompletionReport {
    std::vector<IterationRecord> iterations;
    int total_iterations = 0;
    double seconds = 0.0;
    double final_observed_fit = 0.0;
    // vs ground truth, when supplied
    std::optional<double> rel_error;
    std::optional<Psnr> psnr_paper;
    std::optional<Psnr> psnr_standard;

    static std::string csv_header();
    std::string csv_rows() const;
};

/// One application of the chosen low-rank operator at the given rank; the
/// result has tubal rank <= rank (oversampled sketches are truncated).
Tensor3 step_lowrank(const Tensor3& c, Index rank, const SketchPlan& plan, LowRankOperator op);

/// Observed entries from m_obs, unobserved from x; exact copies, no blending.
Tensor3 step_mask(const Tensor3& m_obs, const MaskTensor& omega, const Tensor3& x);

/// Alternating low-rank approximation and observed-entry reinsertion, staged
/// over cfg.rank_schedule. Unknown entries start at zero. Returns the final
/// post-mask iterate (observed entries equal m_obs bitwise) and the report.
std::pair<Tensor3, CompletionReport> complete(const Tensor3& m_obs, const MaskTensor& omega,
                                              const CompletionConfig& cfg,
                                              const Tensor3* truth = nullptr);

/// Per-frontal-slice PSNR (paper form) of a reconstruction against its truth.
std::vector<Psnr> psnr_trace(const Tensor3& reconstruction, const Tensor3& truth);

}  // namespace tubal
