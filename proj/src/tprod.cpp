#include "tubal/tprod.hpp"

#include <stdexcept>

namespace tubal {

Tensor3 tprod(const Tensor3& x, const Tensor3& y) {
    if (x.cols() != y.rows() || x.depth() != y.depth())
        throw std::invalid_argument("tprod: inner dimensions or depths do not match");
    const SpectralTensor xh = fft_tubes(x);
    const SpectralTensor yh = fft_tubes(y);
    const Index h = xh.stored_count();
    std::vector<MatrixXcd> half(static_cast<std::size_t>(h));
    for (Index s = 0; s < h; ++s) half[static_cast<std::size_t>(s)] = xh.stored(s) * yh.stored(s);
    return ifft_tubes(SpectralTensor(x.rows(), y.cols(), x.depth(), std::move(half)));
}

Tensor3 tprod_oracle(const Tensor3& x, const Tensor3& y) {
    if (x.cols() != y.rows() || x.depth() != y.depth())
        throw std::invalid_argument("tprod_oracle: inner dimensions or depths do not match");
    const Index i1 = x.rows(), i2 = x.cols(), i4 = y.cols(), i3 = x.depth();

    Eigen::MatrixXd circ(i1 * i3, i2 * i3);
    for (Index bc = 0; bc < i3; ++bc) {
        for (Index br = 0; br < i3; ++br) {
            const Index src = (br - bc + i3) % i3;  // block-circulant shift
            circ.block(br * i1, bc * i2, i1, i2) = x.slice(src);
        }
    }
    Eigen::MatrixXd unfolded(i2 * i3, i4);
    for (Index b = 0; b < i3; ++b) unfolded.middleRows(b * i2, i2) = y.slice(b);

    const Eigen::MatrixXd stacked = circ * unfolded;
    Tensor3 out(i1, i4, i3);
    for (Index b = 0; b < i3; ++b) out.slice(b) = stacked.middleRows(b * i1, i1);
    return out;
}

Tensor3 ttranspose(const Tensor3& x) {
    Tensor3 out(x.cols(), x.rows(), x.depth());
    out.slice(0) = x.slice(0).transpose();
    for (Index k = 1; k < x.depth(); ++k) out.slice(k) = x.slice(x.depth() - k).transpose();
    return out;
}

Tensor3 identity_tensor(Index n, Index depth) {
    Tensor3 out(n, n, depth);
    out.slice(0).setIdentity();
    return out;
}

bool is_orthogonal(const Tensor3& q, double tol) {
    const Tensor3 gram = tprod(ttranspose(q), q);
    const Tensor3 eye = identity_tensor(q.cols(), q.depth());
    if (fro_norm(gram - eye) > tol) return false;
    if (q.rows() == q.cols()) {
        const Tensor3 outer = tprod(q, ttranspose(q));
        if (fro_norm(outer - eye) > tol) return false;
    }
    return true;
}

bool is_f_diagonal(const Tensor3& s, double tol) {
    for (Index k = 0; k < s.depth(); ++k) {
        const auto slice = s.slice(k);
        for (Index j = 0; j < s.cols(); ++j)
            for (Index i = 0; i < s.rows(); ++i)
                if (i != j && std::abs(slice(i, j)) > tol) return false;
    }
    return true;
}

}  // namespace tubal
