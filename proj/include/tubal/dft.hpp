#pragma once

#include <complex>
#include <vector>

#include "tubal/tensor.hpp"

namespace tubal {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

/// Mode-3 spectrum of a real tensor, stored as the first ceil((I3+1)/2)
/// frontal slices; the remaining slices are conjugate mirrors and are
/// materialized on demand by full_slice().
class SpectralTensor {
public:
    SpectralTensor() = default;

    /// Takes ownership of the stored half-spectrum slices. `half.size()` must
    /// equal half_count(depth) and every slice must be rows x cols.
    SpectralTensor(Index rows, Index cols, Index depth, std::vector<MatrixXcd> half);

    static Index half_count(Index depth) { return (depth + 1) / 2 + (depth % 2 == 0 ? 1 : 0); }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index depth() const { return depth_; }
    Index stored_count() const { return static_cast<Index>(half_.size()); }

    MatrixXcd& stored(Index h);
    const MatrixXcd& stored(Index h) const;

    /// Slice k of the full spectrum (0-based): stored for k < H, conjugate of
    /// slice depth-k otherwise.
    MatrixXcd full_slice(Index k) const;

    /// True when slice h equals its own conjugate mirror (the DC slice and,
    /// for even depth, the Nyquist slice); such slices must be real for the
    /// spectrum to invert to a real tensor.
    bool self_conjugate(Index h) const { return h == 0 || (depth_ % 2 == 0 && h == depth_ / 2); }

    /// Sum of ||slice||_F^2 over the full depth, computed from the half
    /// storage with mirror multiplicities. Equals I3 * ||x||_F^2 for the
    /// spectrum of a real tensor x.
    double squared_fro_sum() const;

    /// Largest entry magnitude over the stored slices.
    double inf_norm() const;

private:
    Index rows_ = 0, cols_ = 0, depth_ = 0;
    std::vector<MatrixXcd> half_;
};

/// Unnormalized forward DFT along every tube; only the conjugate-symmetric
/// half of the spectrum is stored.
SpectralTensor fft_tubes(const Tensor3& x);

/// Inverse DFT (1/I3 normalization) along every tube. Throws
/// std::invalid_argument when the self-conjugate slices carry imaginary parts
/// above 1e-8 relative to the spectrum magnitude (malformed spectrum);
/// rounding-level imaginary residue in the output is discarded.
Tensor3 ifft_tubes(const SpectralTensor& xhat);

namespace detail {

/// Length-n DFT plan: iterative radix-2 for powers of two, Bluestein's
/// chirp-z reduction to a padded power-of-two transform otherwise.
class DftPlan {
public:
    explicit DftPlan(Index n);

    Index length() const { return n_; }
    void forward(Complex* buf) const;
    /// Inverse with 1/n scaling.
    void inverse(Complex* buf) const;

private:
    void pow2_forward(Complex* buf, Index n, const std::vector<Complex>& tw,
                      const std::vector<Index>& rev) const;

    Index n_ = 0;
    bool is_pow2_ = false;
    // radix-2 tables for length n_ (when power of two)
    std::vector<Complex> twiddle_;
    std::vector<Index> bitrev_;
    // Bluestein state: chirp a_k = exp(-i pi k^2 / n), padded transform of the
    // conjugate chirp, and tables for the padded length m_.
    Index m_ = 0;
    std::vector<Complex> chirp_;
    std::vector<Complex> chirp_spectrum_;
    std::vector<Complex> twiddle_m_;
    std::vector<Index> bitrev_m_;
};

}  // namespace detail

}  // namespace tubal
