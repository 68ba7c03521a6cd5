#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tubal {

using Index = Eigen::Index;

/// Dense third-order tensor stored mode-1-fastest (each frontal slice is a
/// contiguous column-major matrix, slices are contiguous along mode 3).
/// Values are immutable once built in API terms; mutation happens through
/// the owning builder/constructor path only.
template <typename Scalar>
class Tensor3T {
public:
    using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using SliceMap = Eigen::Map<MatrixType>;
    using ConstSliceMap = Eigen::Map<const MatrixType>;
    using TubeMap = Eigen::Map<Eigen::Vector<Scalar, Eigen::Dynamic>, 0,
                               Eigen::InnerStride<Eigen::Dynamic>>;
    using ConstTubeMap = Eigen::Map<const Eigen::Vector<Scalar, Eigen::Dynamic>, 0,
                                    Eigen::InnerStride<Eigen::Dynamic>>;

    Tensor3T() = default;

    Tensor3T(Index rows, Index cols, Index depth)
        : rows_(rows), cols_(cols), depth_(depth) {
        if (rows < 1 || cols < 1 || depth < 1)
            throw std::invalid_argument("Tensor3: dimensions must be positive");
        data_ = Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(rows * cols * depth);
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index depth() const { return depth_; }
    Index size() const { return data_.size(); }
    bool empty() const { return data_.size() == 0; }

    Scalar& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
    const Scalar& operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

    /// Frontal slice X(:,:,k) as a writable Eigen view.
    SliceMap slice(Index k) {
        check_slice(k);
        return SliceMap(data_.data() + k * rows_ * cols_, rows_, cols_);
    }
    ConstSliceMap slice(Index k) const {
        check_slice(k);
        return ConstSliceMap(data_.data() + k * rows_ * cols_, rows_, cols_);
    }

    /// Mode-3 fiber X(i,j,:) as a strided Eigen view.
    TubeMap tube(Index i, Index j) {
        check_entry(i, j);
        return TubeMap(data_.data() + j * rows_ + i, depth_,
                       Eigen::InnerStride<Eigen::Dynamic>(rows_ * cols_));
    }
    ConstTubeMap tube(Index i, Index j) const {
        check_entry(i, j);
        return ConstTubeMap(data_.data() + j * rows_ + i, depth_,
                            Eigen::InnerStride<Eigen::Dynamic>(rows_ * cols_));
    }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }
    Eigen::Vector<Scalar, Eigen::Dynamic>& vec() { return data_; }
    const Eigen::Vector<Scalar, Eigen::Dynamic>& vec() const { return data_; }

    bool same_dims(const Tensor3T& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && depth_ == other.depth_;
    }

    Tensor3T operator+(const Tensor3T& other) const {
        require_same_dims(other, "operator+");
        Tensor3T out(rows_, cols_, depth_);
        out.data_ = data_ + other.data_;
        return out;
    }
    Tensor3T operator-(const Tensor3T& other) const {
        require_same_dims(other, "operator-");
        Tensor3T out(rows_, cols_, depth_);
        out.data_ = data_ - other.data_;
        return out;
    }
    Tensor3T operator*(Scalar a) const {
        Tensor3T out(rows_, cols_, depth_);
        out.data_ = data_ * a;
        return out;
    }

    void require_same_dims(const Tensor3T& other, const char* where) const {
        if (!same_dims(other))
            throw std::invalid_argument(std::string(where) + ": tensor dimensions do not match");
    }

private:
    Index offset(Index i, Index j, Index k) const {
        check_slice(k);
        check_entry(i, j);
        return i + j * rows_ + k * rows_ * cols_;
    }
    void check_slice(Index k) const {
        if (k < 0 || k >= depth_) throw std::out_of_range("Tensor3: slice index out of range");
    }
    void check_entry(Index i, Index j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("Tensor3: entry index out of range");
    }

    Index rows_ = 0, cols_ = 0, depth_ = 0;
    Eigen::Vector<Scalar, Eigen::Dynamic> data_;
};

using Tensor3 = Tensor3T<double>;

/// Boolean observation pattern with Tensor3 linearization.
class MaskTensor {
public:
    MaskTensor() = default;
    MaskTensor(Index rows, Index cols, Index depth)
        : rows_(rows), cols_(cols), depth_(depth),
          flags_(static_cast<std::size_t>(rows * cols * depth), 0) {
        if (rows < 1 || cols < 1 || depth < 1)
            throw std::invalid_argument("MaskTensor: dimensions must be positive");
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index depth() const { return depth_; }
    Index size() const { return static_cast<Index>(flags_.size()); }

    bool get(Index i, Index j, Index k) const { return flags_[offset(i, j, k)] != 0; }
    void set(Index i, Index j, Index k, bool value) { flags_[offset(i, j, k)] = value ? 1 : 0; }
    bool get_linear(Index n) const { return flags_[static_cast<std::size_t>(n)] != 0; }
    void set_linear(Index n, bool value) { flags_[static_cast<std::size_t>(n)] = value ? 1 : 0; }

    Index count_true() const {
        Index n = 0;
        for (auto f : flags_) n += (f != 0);
        return n;
    }

    MaskTensor complement() const {
        MaskTensor out(rows_, cols_, depth_);
        for (std::size_t n = 0; n < flags_.size(); ++n) out.flags_[n] = flags_[n] ? 0 : 1;
        return out;
    }

    bool same_dims(const Tensor3& x) const {
        return rows_ == x.rows() && cols_ == x.cols() && depth_ == x.depth();
    }

private:
    std::size_t offset(Index i, Index j, Index k) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_ || k < 0 || k >= depth_)
            throw std::out_of_range("MaskTensor: index out of range");
        return static_cast<std::size_t>(i + j * rows_ + k * rows_ * cols_);
    }

    Index rows_ = 0, cols_ = 0, depth_ = 0;
    std::vector<std::uint8_t> flags_;
};

inline double fro_norm(const Tensor3& x) { return x.vec().norm(); }

inline double inf_norm(const Tensor3& x) { return x.vec().cwiseAbs().maxCoeff(); }

inline Tensor3 hadamard(const Tensor3& x, const Tensor3& y) {
    x.require_same_dims(y, "hadamard");
    Tensor3 out(x.rows(), x.cols(), x.depth());
    out.vec() = x.vec().cwiseProduct(y.vec());
    return out;
}

/// Keeps entries flagged in omega, zeroes the rest.
inline Tensor3 mask_project(const Tensor3& x, const MaskTensor& omega) {
    if (!omega.same_dims(x))
        throw std::invalid_argument("mask_project: mask dimensions do not match");
    Tensor3 out(x.rows(), x.cols(), x.depth());
    for (Index n = 0; n < x.size(); ++n)
        out.vec()[n] = omega.get_linear(n) ? x.vec()[n] : 0.0;
    return out;
}

inline double relative_error(const Tensor3& reference, const Tensor3& approx) {
    reference.require_same_dims(approx, "relative_error");
    const double denom = fro_norm(reference);
    if (denom == 0.0)
        throw std::invalid_argument("relative_error: reference tensor has zero norm");
    return (reference.vec() - approx.vec()).norm() / denom;
}

/// PSNR result; `exact` flags an identical pair (infinite PSNR).
struct Psnr {
    double decibels = 0.0;
    bool exact = false;
};

/// 10*log10(||X||_inf / ||X - Y||_F), the form used for figure/table comparisons.
inline Psnr psnr(const Tensor3& reference, const Tensor3& approx) {
    reference.require_same_dims(approx, "psnr");
    const double diff = (reference.vec() - approx.vec()).norm();
    if (diff == 0.0) return {std::numeric_limits<double>::infinity(), true};
    return {10.0 * std::log10(inf_norm(reference) / diff), false};
}

/// Conventional PSNR: 10*log10(peak^2 * N / ||X - Y||_F^2) with peak = ||X||_inf.
inline Psnr psnr_standard(const Tensor3& reference, const Tensor3& approx) {
    reference.require_same_dims(approx, "psnr_standard");
    const double diff2 = (reference.vec() - approx.vec()).squaredNorm();
    if (diff2 == 0.0) return {std::numeric_limits<double>::infinity(), true};
    const double peak = inf_norm(reference);
    return {10.0 * std::log10(peak * peak * static_cast<double>(reference.size()) / diff2), false};
}

}  // namespace tubal
