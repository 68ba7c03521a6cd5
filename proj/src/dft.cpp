#include "tubal/dft.hpp"

#include <stdexcept>

namespace tubal {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

SpectralTensor::SpectralTensor(Index rows, Index cols, Index depth, std::vector<MatrixXcd> half)
    : rows_(rows), cols_(cols), depth_(depth), half_(std::move(half)) {
    if (rows < 1 || cols < 1 || depth < 1)
        throw std::invalid_argument("SpectralTensor: dimensions must be positive");
    if (static_cast<Index>(half_.size()) != half_count(depth))
        throw std::invalid_argument("SpectralTensor: wrong number of stored slices");
    for (const auto& s : half_)
        if (s.rows() != rows || s.cols() != cols)
            throw std::invalid_argument("SpectralTensor: stored slice has wrong shape");
}

MatrixXcd& SpectralTensor::stored(Index h) {
    if (h < 0 || h >= stored_count()) throw std::out_of_range("SpectralTensor: stored index");
    return half_[static_cast<std::size_t>(h)];
}

const MatrixXcd& SpectralTensor::stored(Index h) const {
    if (h < 0 || h >= stored_count()) throw std::out_of_range("SpectralTensor: stored index");
    return half_[static_cast<std::size_t>(h)];
}

MatrixXcd SpectralTensor::full_slice(Index k) const {
    if (k < 0 || k >= depth_) throw std::out_of_range("SpectralTensor: slice index");
    if (k < stored_count()) return half_[static_cast<std::size_t>(k)];
    return half_[static_cast<std::size_t>(depth_ - k)].conjugate();
}

double SpectralTensor::squared_fro_sum() const {
    double total = 0.0;
    for (Index h = 0; h < stored_count(); ++h) {
        const double w = self_conjugate(h) ? 1.0 : 2.0;
        total += w * half_[static_cast<std::size_t>(h)].squaredNorm();
    }
    return total;
}

double SpectralTensor::inf_norm() const {
    double m = 0.0;
    for (const auto& s : half_) m = std::max(m, s.cwiseAbs().maxCoeff());
    return m;
}

namespace detail {

namespace {

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Index next_power_of_two(Index n) {
    Index m = 1;
    while (m < n) m <<= 1;
    return m;
}

std::vector<Index> make_bitrev(Index n) {
    std::vector<Index> rev(static_cast<std::size_t>(n));
    Index bits = 0;
    while ((Index(1) << bits) < n) ++bits;
    for (Index i = 0; i < n; ++i) {
        Index r = 0;
        for (Index b = 0; b < bits; ++b)
            if (i & (Index(1) << b)) r |= Index(1) << (bits - 1 - b);
        rev[static_cast<std::size_t>(i)] = r;
    }
    return rev;
}

std::vector<Complex> make_twiddles(Index n) {
    std::vector<Complex> tw(static_cast<std::size_t>(n / 2));
    for (Index k = 0; k < n / 2; ++k) {
        const double angle = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        tw[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    return tw;
}

}  // namespace

DftPlan::DftPlan(Index n) : n_(n) {
    if (n < 1) throw std::invalid_argument("DftPlan: length must be positive");
    is_pow2_ = is_power_of_two(n);
    if (is_pow2_) {
        if (n > 1) {
            twiddle_ = make_twiddles(n);
            bitrev_ = make_bitrev(n);
        }
        return;
    }
    // Bluestein: x_k a_k convolved with b, where a_k = exp(-i pi k^2/n) and
    // b_k = conj(a_k). Angles use k^2 mod 2n to keep the argument small.
    m_ = next_power_of_two(2 * n - 1);
    twiddle_m_ = make_twiddles(m_);
    bitrev_m_ = make_bitrev(m_);
    chirp_.resize(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
        const Index k2 = (k * k) % (2 * n);
        const double angle = -kPi * static_cast<double>(k2) / static_cast<double>(n);
        chirp_[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<Complex> b(static_cast<std::size_t>(m_), Complex{0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (Index k = 1; k < n; ++k) {
        const Complex v = std::conj(chirp_[static_cast<std::size_t>(k)]);
        b[static_cast<std::size_t>(k)] = v;
        b[static_cast<std::size_t>(m_ - k)] = v;
    }
    pow2_forward(b.data(), m_, twiddle_m_, bitrev_m_);
    chirp_spectrum_ = std::move(b);
}

void DftPlan::pow2_forward(Complex* buf, Index n, const std::vector<Complex>& tw,
                           const std::vector<Index>& rev) const {
    for (Index i = 0; i < n; ++i) {
        const Index r = rev[static_cast<std::size_t>(i)];
        if (i < r) std::swap(buf[i], buf[r]);
    }
    for (Index len = 2; len <= n; len <<= 1) {
        const Index stride = n / len;
        for (Index start = 0; start < n; start += len) {
            for (Index k = 0; k < len / 2; ++k) {
                const Complex w = tw[static_cast<std::size_t>(k * stride)];
                const Complex u = buf[start + k];
                const Complex t = w * buf[start + k + len / 2];
                buf[start + k] = u + t;
                buf[start + k + len / 2] = u - t;
            }
        }
    }
}

void DftPlan::forward(Complex* buf) const {
    if (n_ == 1) return;
    if (is_pow2_) {
        pow2_forward(buf, n_, twiddle_, bitrev_);
        return;
    }
    std::vector<Complex> work(static_cast<std::size_t>(m_), Complex{0.0, 0.0});
    for (Index k = 0; k < n_; ++k) work[static_cast<std::size_t>(k)] = buf[k] * chirp_[static_cast<std::size_t>(k)];
    pow2_forward(work.data(), m_, twiddle_m_, bitrev_m_);
    for (Index k = 0; k < m_; ++k) work[static_cast<std::size_t>(k)] *= chirp_spectrum_[static_cast<std::size_t>(k)];
    // inverse padded transform via conjugation
    for (auto& v : work) v = std::conj(v);
    pow2_forward(work.data(), m_, twiddle_m_, bitrev_m_);
    const double scale = 1.0 / static_cast<double>(m_);
    for (Index k = 0; k < n_; ++k)
        buf[k] = std::conj(work[static_cast<std::size_t>(k)]) * scale * chirp_[static_cast<std::size_t>(k)];
}

void DftPlan::inverse(Complex* buf) const {
    if (n_ == 1) return;
    for (Index k = 0; k < n_; ++k) buf[k] = std::conj(buf[k]);
    forward(buf);
    const double scale = 1.0 / static_cast<double>(n_);
    for (Index k = 0; k < n_; ++k) buf[k] = std::conj(buf[k]) * scale;
}

}  // namespace detail

SpectralTensor fft_tubes(const Tensor3& x) {
    const Index rows = x.rows(), cols = x.cols(), depth = x.depth();
    const Index h = SpectralTensor::half_count(depth);
    std::vector<MatrixXcd> half(static_cast<std::size_t>(h));
    for (auto& s : half) s.resize(rows, cols);

    if (depth == 1) {
        half[0] = x.slice(0).cast<Complex>();
        return SpectralTensor(rows, cols, depth, std::move(half));
    }

    const detail::DftPlan plan(depth);
    std::vector<Complex> buf(static_cast<std::size_t>(depth));
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const auto t = x.tube(i, j);
            for (Index k = 0; k < depth; ++k) buf[static_cast<std::size_t>(k)] = {t[k], 0.0};
            plan.forward(buf.data());
            for (Index s = 0; s < h; ++s) half[static_cast<std::size_t>(s)](i, j) = buf[static_cast<std::size_t>(s)];
        }
    }
    return SpectralTensor(rows, cols, depth, std::move(half));
}

Tensor3 ifft_tubes(const SpectralTensor& xhat) {
    const Index rows = xhat.rows(), cols = xhat.cols(), depth = xhat.depth();
    const double tol = 1e-8 * std::max(1.0, xhat.inf_norm());
    for (Index h = 0; h < xhat.stored_count(); ++h) {
        if (!xhat.self_conjugate(h)) continue;
        const double residue = xhat.stored(h).imag().cwiseAbs().maxCoeff();
        if (residue > tol)
            throw std::invalid_argument(
                "ifft_tubes: malformed spectrum (self-conjugate slice has imaginary part)");
    }

    Tensor3 out(rows, cols, depth);
    if (depth == 1) {
        out.slice(0) = xhat.stored(0).real();
        return out;
    }

    const detail::DftPlan plan(depth);
    const Index h = xhat.stored_count();
    std::vector<Complex> buf(static_cast<std::size_t>(depth));
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            for (Index k = 0; k < depth; ++k) {
                buf[static_cast<std::size_t>(k)] =
                    k < h ? xhat.stored(k)(i, j) : std::conj(xhat.stored(depth - k)(i, j));
            }
            plan.inverse(buf.data());
            auto t = out.tube(i, j);
            for (Index k = 0; k < depth; ++k) t[k] = buf[static_cast<std::size_t>(k)].real();
        }
    }
    return out;
}

}  // namespace tubal
