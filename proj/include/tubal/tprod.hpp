#pragma once

#include "tubal/dft.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Tubal product X * Y computed slice-wise in the mode-3 Fourier domain
/// (half-spectrum products, conjugate-symmetric extension, inverse transform).
/// X is I1 x I2 x I3, Y is I2 x I4 x I3, the result I1 x I4 x I3.
Tensor3 tprod(const Tensor3& x, const Tensor3& y);

/// Reference semantics of the tubal product: materializes the block-circulant
/// expansion of X, multiplies the unfolded Y and folds back. O(I1*I2*I4*I3^2);
/// kept as the independent cross-check for the Fourier path.
Tensor3 tprod_oracle(const Tensor3& x, const Tensor3& y);

/// Slice-1 transposed; slice k (k >= 1) of the result is the transpose of
/// slice I3-k of the input.
Tensor3 ttranspose(const Tensor3& x);

/// n x n x depth tensor whose first frontal slice is the identity matrix and
/// all remaining slices are zero; the unit of the tubal product.
Tensor3 identity_tensor(Index n, Index depth);

/// ||Q^T * Q - I||_F <= tol, plus the mirrored condition for square Q.
/// Tall tensors are judged one-sidedly (partial orthogonality).
bool is_orthogonal(const Tensor3& q, double tol);

/// Every frontal slice diagonal up to tol.
bool is_f_diagonal(const Tensor3& s, double tol);

}  // namespace tubal
