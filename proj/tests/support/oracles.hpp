#pragma once

// Test-only reference implementations, independent of the library's
// transform and factorization paths.

#include <complex>
#include <random>
#include <vector>

#include "tubal/tensor.hpp"

namespace oracles {

using tubal::Index;
using tubal::Tensor3;
using Complex = std::complex<double>;

// Direct O(n^2) DFT of one tube (unnormalized forward).
inline std::vector<Complex> naive_dft(const std::vector<Complex>& x) {
    const std::size_t n = x.size();
    const double pi = 3.141592653589793238462643383279502884;
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const double angle = -2.0 * pi * static_cast<double>(k * m) / static_cast<double>(n);
            acc += x[m] * Complex{std::cos(angle), std::sin(angle)};
        }
        out[k] = acc;
    }
    return out;
}

// Full mode-3 spectrum of a real tensor via the naive DFT, one slice per k.
inline std::vector<Eigen::MatrixXcd> naive_tube_spectrum(const Tensor3& x) {
    std::vector<Eigen::MatrixXcd> slices(static_cast<std::size_t>(x.depth()),
                                         Eigen::MatrixXcd(x.rows(), x.cols()));
    std::vector<Complex> tube(static_cast<std::size_t>(x.depth()));
    for (Index j = 0; j < x.cols(); ++j)
        for (Index i = 0; i < x.rows(); ++i) {
            for (Index k = 0; k < x.depth(); ++k) tube[static_cast<std::size_t>(k)] = {x(i, j, k), 0.0};
            const auto spec = naive_dft(tube);
            for (Index k = 0; k < x.depth(); ++k) slices[static_cast<std::size_t>(k)](i, j) = spec[static_cast<std::size_t>(k)];
        }
    return slices;
}

// Cyclic Jacobi eigensolver for Hermitian matrices; returns eigenvalues in
// descending order. Used as the Gram-matrix route for singular values:
// sqrt(eig(A^H A)) must match svd(A).
inline Eigen::VectorXd jacobi_hermitian_eigenvalues(Eigen::MatrixXcd a, int sweeps = 100,
                                                    double tol = 1e-15) {
    const Index n = a.rows();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= tol * std::max(1.0, a.norm())) break;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= 1e-300) continue;
                // absorb the phase so the (p,q) plane becomes real symmetric,
                // then rotate: J = diag(1, w) * [[c, -s], [s, c]]
                const Complex w = std::conj(apq) / g;
                const double theta =
                    0.5 * std::atan2(2.0 * g, a(p, p).real() - a(q, q).real());
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                Eigen::Matrix2cd j;
                j << Complex{c, 0.0}, Complex{-s, 0.0}, w * s, w * c;
                Eigen::MatrixXcd cols(n, 2);
                cols.col(0) = a.col(p);
                cols.col(1) = a.col(q);
                cols *= j;
                a.col(p) = cols.col(0);
                a.col(q) = cols.col(1);
                Eigen::MatrixXcd rows(2, n);
                rows.row(0) = a.row(p);
                rows.row(1) = a.row(q);
                rows = j.adjoint() * rows;
                a.row(p) = rows.row(0);
                a.row(q) = rows.row(1);
            }
        }
    }
    Eigen::VectorXd ev(n);
    for (Index i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.data(), ev.data() + n, std::greater<double>());
    return ev;
}

// Deterministic random tensors for tests (independent of the library stream).
inline Tensor3 random_tensor(Index rows, Index cols, Index depth, unsigned seed) {
    std::mt19937 engine(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Tensor3 out(rows, cols, depth);
    for (Index n = 0; n < out.size(); ++n) out.vec()[n] = dist(engine);
    return out;
}

inline Eigen::MatrixXcd random_complex_matrix(Index rows, Index cols, unsigned seed) {
    std::mt19937 engine(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXcd out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) out(i, j) = Complex{dist(engine), dist(engine)};
    return out;
}

}  // namespace oracles
