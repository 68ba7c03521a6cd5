#include "tubal/factor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <stdexcept>

namespace tubal {

ComplexQr complex_qr(const MatrixXcd& a) {
    const Index k = std::min(a.rows(), a.cols());
    Eigen::HouseholderQR<MatrixXcd> qr(a);
    MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(a.rows(), k);
    MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    // rotate unit phases into q so diag(r) is real >= 0
    for (Index i = 0; i < k; ++i) {
        const Complex d = r(i, i);
        if (d == Complex{0.0, 0.0}) continue;
        const Complex phase = d / std::abs(d);
        q.col(i) *= phase;
        r.row(i) *= std::conj(phase);
        r(i, i) = std::abs(d);  // kill rounding residue on the diagonal
    }
    return {std::move(q), std::move(r)};
}

ComplexSvd complex_svd_truncated(const MatrixXcd& a, Index rank) {
    if (rank < 1 || rank > std::min(a.rows(), a.cols()))
        throw std::invalid_argument("complex_svd_truncated: rank out of range");
    Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ComplexSvd out;
    out.u = svd.matrixU().leftCols(rank);
    out.s = svd.singularValues().head(rank);
    out.v = svd.matrixV().leftCols(rank);
    for (Index j = 0; j < rank; ++j) {
        Index imax = 0;
        out.u.col(j).cwiseAbs().maxCoeff(&imax);
        const Complex top = out.u(imax, j);
        if (top == Complex{0.0, 0.0}) continue;
        const Complex phase = std::conj(top) / std::abs(top);
        out.u.col(j) *= phase;
        out.v.col(j) *= phase;
    }
    return out;
}

namespace {

// Self-conjugate slices of a real signal's spectrum are real; the transform's
// rounding residue must go before factorization, where a rank-deficient slice
// would otherwise normalize it into an O(1) complex null direction.
MatrixXcd realified(const SpectralTensor& xh, Index s) {
    if (xh.self_conjugate(s)) return xh.stored(s).real().cast<Complex>();
    return xh.stored(s);
}

}  // namespace

TqrFactors t_qr(const Tensor3& x) {
    const Index k = std::min(x.rows(), x.cols());
    const SpectralTensor xh = fft_tubes(x);
    const Index h = xh.stored_count();
    std::vector<MatrixXcd> qs(static_cast<std::size_t>(h));
    std::vector<MatrixXcd> rs(static_cast<std::size_t>(h));
    for (Index s = 0; s < h; ++s) {
        auto qr = complex_qr(realified(xh, s));
        qs[static_cast<std::size_t>(s)] = std::move(qr.q);
        rs[static_cast<std::size_t>(s)] = std::move(qr.r);
    }
    TqrFactors out;
    out.q = ifft_tubes(SpectralTensor(x.rows(), k, x.depth(), std::move(qs)));
    out.r = ifft_tubes(SpectralTensor(k, x.cols(), x.depth(), std::move(rs)));
    return out;
}

Tensor3 orth(const Tensor3& x) { return t_qr(x).q; }

TsvdFactors truncated_tsvd(const Tensor3& x, Index rank) {
    if (rank < 1 || rank > std::min(x.rows(), x.cols()))
        throw std::invalid_argument("truncated_tsvd: rank out of range");
    const SpectralTensor xh = fft_tubes(x);
    const Index h = xh.stored_count();
    std::vector<MatrixXcd> us(static_cast<std::size_t>(h));
    std::vector<MatrixXcd> ss(static_cast<std::size_t>(h));
    std::vector<MatrixXcd> vs(static_cast<std::size_t>(h));
    for (Index s = 0; s < h; ++s) {
        auto svd = complex_svd_truncated(realified(xh, s), rank);
        us[static_cast<std::size_t>(s)] = std::move(svd.u);
        ss[static_cast<std::size_t>(s)] = svd.s.cast<Complex>().asDiagonal();
        vs[static_cast<std::size_t>(s)] = std::move(svd.v);
    }
    TsvdFactors out;
    out.u = ifft_tubes(SpectralTensor(x.rows(), rank, x.depth(), std::move(us)));
    out.s = ifft_tubes(SpectralTensor(rank, rank, x.depth(), std::move(ss)));
    out.v = ifft_tubes(SpectralTensor(x.cols(), rank, x.depth(), std::move(vs)));
    return out;
}

TsvdFactors truncate(const TsvdFactors& f, Index rank) {
    if (rank < 1 || rank > f.rank()) throw std::invalid_argument("truncate: rank out of range");
    if (rank == f.rank()) return f;
    TsvdFactors out;
    out.u = Tensor3(f.u.rows(), rank, f.u.depth());
    out.s = Tensor3(rank, rank, f.s.depth());
    out.v = Tensor3(f.v.rows(), rank, f.v.depth());
    for (Index k = 0; k < f.u.depth(); ++k) {
        out.u.slice(k) = f.u.slice(k).leftCols(rank);
        out.s.slice(k) = f.s.slice(k).topLeftCorner(rank, rank);
        out.v.slice(k) = f.v.slice(k).leftCols(rank);
    }
    return out;
}

double tsvd_error(const Tensor3& x, const TsvdFactors& f) {
    return relative_error(x, f.compose());
}

}  // namespace tubal
