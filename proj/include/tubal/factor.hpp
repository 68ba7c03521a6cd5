#pragma once

#include "tubal/dft.hpp"
#include "tubal/tensor.hpp"
#include "tubal/tprod.hpp"

namespace tubal {

/// Economy QR of a complex matrix. Q is m x k, R is k x n with k = min(m, n);
/// the diagonal of R is normalized to real non-negative so the factorization
/// is deterministic.
struct ComplexQr {
    MatrixXcd q;
    MatrixXcd r;
};
ComplexQr complex_qr(const MatrixXcd& a);

/// Leading `rank` singular triplets of a complex matrix. Singular values are
/// non-negative and descending; each (u, v) column pair is phase-normalized so
/// the largest-magnitude entry of the u column is real positive.
struct ComplexSvd {
    MatrixXcd u;
    Eigen::VectorXd s;
    MatrixXcd v;
};
ComplexSvd complex_svd_truncated(const MatrixXcd& a, Index rank);

/// Tubal QR factors: x = q * r with q partially orthogonal.
/// q is I1 x K x I3 and r is K x I2 x I3, K = min(I1, I2).
struct TqrFactors {
    Tensor3 q;
    Tensor3 r;
};

/// Slice-wise QR in the Fourier domain over the stored half spectrum, mirrored
/// and inverse-transformed.
TqrFactors t_qr(const Tensor3& x);

/// The orthonormal part of t_qr.
Tensor3 orth(const Tensor3& x);

/// Tubal SVD factors for the model x ~= u * s * ttranspose(v):
/// u is I1 x R x I3, s is R x R x I3 f-diagonal, v is I2 x R x I3.
struct TsvdFactors {
    Tensor3 u;
    Tensor3 s;
    Tensor3 v;

    Index rank() const { return s.rows(); }
    /// u * s * v^T
    Tensor3 compose() const { return tprod(tprod(u, s), ttranspose(v)); }
};

/// Rank-R tubal SVD: truncated SVD of each stored spectral slice, conjugate
/// extension (S slices mirror without conjugation), inverse transform of all
/// three factors. Requires 1 <= rank <= min(I1, I2).
TsvdFactors truncated_tsvd(const Tensor3& x, Index rank);

/// Leading `rank` tubes of existing factors (valid because every spectral
/// slice keeps its singular values in descending order).
TsvdFactors truncate(const TsvdFactors& f, Index rank);

/// relative_error(x, compose(f)).
double tsvd_error(const Tensor3& x, const TsvdFactors& f);

}  // namespace tubal
