#include <doctest.h>

#include "oracles.hpp"
#include "tubal/dft.hpp"

using namespace tubal;

namespace {

double max_slice_error(const SpectralTensor& got, const std::vector<Eigen::MatrixXcd>& want) {
    double err = 0.0;
    for (Index k = 0; k < got.depth(); ++k)
        err = std::max(err,
                       (got.full_slice(k) - want[static_cast<std::size_t>(k)]).cwiseAbs().maxCoeff());
    return err;
}

}  // namespace

TEST_CASE("fft_tubes basics") {
    // depth 1 is the identity
    const Tensor3 flat = oracles::random_tensor(3, 4, 1, 5);
    const SpectralTensor fh = fft_tubes(flat);
    CHECK((fh.stored(0).real() - Eigen::MatrixXd(flat.slice(0))).cwiseAbs().maxCoeff() == 0.0);
    CHECK(fh.stored(0).imag().cwiseAbs().maxCoeff() == 0.0);

    // constant tube -> DC-only spectrum
    Tensor3 constant(2, 2, 6);
    for (Index k = 0; k < 6; ++k) constant.slice(k).setConstant(0.75);
    const SpectralTensor ch = fft_tubes(constant);
    CHECK((ch.stored(0) - MatrixXcd::Constant(2, 2, Complex{4.5, 0.0})).cwiseAbs().maxCoeff() <=
          1e-14);
    for (Index h = 1; h < ch.stored_count(); ++h)
        CHECK(ch.stored(h).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("fft_tubes matches the direct DFT summation") {
    for (Index depth : {2, 3, 5, 7, 8, 12, 33}) {
        const Tensor3 x = oracles::random_tensor(2, 2, depth, 40 + static_cast<unsigned>(depth));
        const auto want = oracles::naive_tube_spectrum(x);
        CHECK(max_slice_error(fft_tubes(x), want) <= 1e-12);
    }
}

TEST_CASE("ifft_tubes") {
    // round trip
    const Tensor3 x = oracles::random_tensor(3, 4, 7, 17);
    const Tensor3 back = ifft_tubes(fft_tubes(x));
    CHECK((x.vec() - back.vec()).cwiseAbs().maxCoeff() <= 1e-12);

    // DC-only spectrum inverts to a constant tube
    std::vector<MatrixXcd> half(SpectralTensor::half_count(5), MatrixXcd::Zero(2, 3));
    half[0] = MatrixXcd::Constant(2, 3, Complex{5.0 * 0.3, 0.0});
    const Tensor3 constant = ifft_tubes(SpectralTensor(2, 3, 5, std::move(half)));
    for (Index k = 0; k < 5; ++k)
        CHECK((Eigen::MatrixXd(constant.slice(k)).array() - 0.3).abs().maxCoeff() <= 1e-13);

    // depth 1 identity
    const Tensor3 flat = oracles::random_tensor(4, 2, 1, 18);
    CHECK(fro_norm(ifft_tubes(fft_tubes(flat)) - flat) == 0.0);

    // complex DC slice is a malformed spectrum
    std::vector<MatrixXcd> bad(SpectralTensor::half_count(4), MatrixXcd::Zero(2, 2));
    bad[0](0, 0) = Complex{1.0, 0.5};
    CHECK_THROWS_AS(ifft_tubes(SpectralTensor(2, 2, 4, std::move(bad))), std::invalid_argument);

    // even depth: the Nyquist slice must be real too
    std::vector<MatrixXcd> bad2(SpectralTensor::half_count(4), MatrixXcd::Zero(2, 2));
    bad2[2](1, 1) = Complex{0.0, 1.0};
    CHECK_THROWS_AS(ifft_tubes(SpectralTensor(2, 2, 4, std::move(bad2))), std::invalid_argument);
}

TEST_CASE("full_slice reconstruction") {
    // depth 4: slice 3 (0-based) mirrors slice 1
    const Tensor3 x = oracles::random_tensor(3, 3, 4, 23);
    const SpectralTensor xh = fft_tubes(x);
    const auto full = oracles::naive_tube_spectrum(x);
    CHECK((xh.full_slice(3) - full[3]).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((xh.full_slice(3) - xh.stored(1).conjugate()).cwiseAbs().maxCoeff() == 0.0);

    // DC slice of a real tensor is real and equals the sum of frontal slices
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(3, 3);
    for (Index k = 0; k < 4; ++k) sum += x.slice(k);
    CHECK((xh.full_slice(0).real() - sum).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(xh.full_slice(0).imag().cwiseAbs().maxCoeff() <= 1e-13);

    // depth 5: H = 3; slice index 2 is stored, not mirrored
    const Tensor3 y = oracles::random_tensor(2, 2, 5, 24);
    const SpectralTensor yh = fft_tubes(y);
    CHECK(yh.stored_count() == 3);
    CHECK((yh.full_slice(2) - yh.stored(2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(yh.full_slice(5), std::out_of_range);
}

TEST_CASE("Parseval identity") {
    for (Index depth : {1, 2, 3, 8, 32, 33}) {
        const Tensor3 x = oracles::random_tensor(32, 32, depth, 100 + static_cast<unsigned>(depth));
        const SpectralTensor xh = fft_tubes(x);
        const double lhs = fro_norm(x) * fro_norm(x);
        const double rhs = xh.squared_fro_sum() / static_cast<double>(depth);
        CHECK(std::abs(lhs - rhs) / lhs <= 1e-12);
    }
}

TEST_CASE("linearity of the tube transform") {
    const Tensor3 x = oracles::random_tensor(3, 2, 6, 51);
    const Tensor3 y = oracles::random_tensor(3, 2, 6, 52);
    const SpectralTensor combo = fft_tubes(x * 2.5 + y * (-0.75));
    const SpectralTensor xh = fft_tubes(x);
    const SpectralTensor yh = fft_tubes(y);
    for (Index h = 0; h < combo.stored_count(); ++h) {
        const MatrixXcd want = 2.5 * xh.stored(h) - 0.75 * yh.stored(h);
        CHECK((combo.stored(h) - want).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
