#pragma once

#include <cstdint>
#include <optional>

#include "tubal/factor.hpp"
#include "tubal/rng.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Shape of the random test tensor. FirstSliceGaussian draws i.i.d. normals in
/// the first frontal slice and leaves the rest zero (the setting of the
/// average-error bounds); DenseGaussian fills every slice.
enum class RandomMode { FirstSliceGaussian, DenseGaussian };

/// Parameters of one randomized sketch: target rank R, oversampling P, either
/// a pass budget v >= 1 or a power-iteration count q >= 0 (exactly one), the
/// seed, and the random-tensor mode.
struct SketchPlan {
    Index rank = 0;
    Index oversample = 0;
    std::optional<int> passes;
    std::optional<int> power_iters;
    std::uint64_t seed = 0;
    RandomMode random_mode = RandomMode::FirstSliceGaussian;

    Index width() const { return rank + oversample; }

    static SketchPlan with_passes(Index rank, Index oversample, int passes, std::uint64_t seed,
                                  RandomMode mode = RandomMode::FirstSliceGaussian) {
        SketchPlan p;
        p.rank = rank;
        p.oversample = oversample;
        p.passes = passes;
        p.seed = seed;
        p.random_mode = mode;
        return p;
    }
    static SketchPlan with_power(Index rank, Index oversample, int power_iters, std::uint64_t seed,
                                 RandomMode mode = RandomMode::FirstSliceGaussian) {
        SketchPlan p;
        p.rank = rank;
        p.oversample = oversample;
        p.power_iters = power_iters;
        p.seed = seed;
        p.random_mode = mode;
        return p;
    }
};

struct PassCounts {
    std::uint64_t forward = 0;
    std::uint64_t adjoint = 0;
    std::uint64_t total() const { return forward + adjoint; }
};

/// Wraps a tensor so that every application of X (or X^T) against a block is
/// counted as one pass over the data. Counter updates are not synchronized;
/// share one source across threads only for reading the wrapped tensor.
class PassCountedSource {
public:
    explicit PassCountedSource(Tensor3 x) : data_(std::move(x)) {}

    Index rows() const { return data_.rows(); }
    Index cols() const { return data_.cols(); }
    Index depth() const { return data_.depth(); }
    const Tensor3& tensor() const { return data_; }

    /// X * block; one forward pass.
    Tensor3 apply(const Tensor3& block) const {
        ++forward_;
        return tprod(data_, block);
    }
    /// X^T * block; one adjoint pass.
    Tensor3 apply_adjoint(const Tensor3& block) const {
        ++adjoint_;
        return tprod(ttranspose(data_), block);
    }

    PassCounts counts() const { return {forward_, adjoint_}; }
    void reset_counts() const { forward_ = adjoint_ = 0; }

private:
    Tensor3 data_;
    mutable std::uint64_t forward_ = 0;
    mutable std::uint64_t adjoint_ = 0;
};

inline PassCounts passes_used(const PassCountedSource& source) { return source.counts(); }

/// Column-major standard-normal fill from the pinned NormalStream.
Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

/// Seeded random tensor per `mode`; entries are drawn in canonical
/// linearization order, so the first slice coincides with
/// gaussian_matrix(rows, cols, seed) in both modes.
Tensor3 gaussian_random_tensor(Index rows, Index cols, Index depth, std::uint64_t seed,
                               RandomMode mode);

/// Width-(R+P) factors from a randomized sketch. Singular values descend in
/// every spectral slice, so truncate() recovers the rank-R variant.
struct MatrixFactors {
    Eigen::MatrixXd u;
    Eigen::VectorXd s;
    Eigen::MatrixXd v;

    Eigen::MatrixXd compose() const { return u * s.asDiagonal() * v.transpose(); }
};
MatrixFactors truncate(const MatrixFactors& f, Index rank);

/// Randomized subspace iteration for the truncated SVD of a matrix
/// (plan.power_iters required). Passes over x: 2q + 2.
MatrixFactors rand_svd_subspace(const Eigen::MatrixXd& x, const SketchPlan& plan);

/// Alternating orthonormalization with an arbitrary pass budget
/// (plan.passes required). Passes over x: exactly v. With v = 1 the returned
/// v-factor is built from the raw Gaussian block and is not orthonormal.
MatrixFactors rand_svd_passes(const Eigen::MatrixXd& x, const SketchPlan& plan);

/// Tensor subspace iteration (plan.power_iters required); consumes exactly
/// 2q + 2 passes of the source.
TsvdFactors rand_tsvd_subspace(const PassCountedSource& x, const SketchPlan& plan);

/// Pass-budgeted tensor sketch (plan.passes required); consumes exactly v
/// passes of the source.
TsvdFactors rand_tsvd_passes(const PassCountedSource& x, const SketchPlan& plan);

}  // namespace tubal
