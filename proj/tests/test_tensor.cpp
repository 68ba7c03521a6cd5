#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tubal/tensor.hpp"

using namespace tubal;

TEST_CASE("fro_norm") {
    CHECK(fro_norm(Tensor3(4, 3, 2)) == 0.0);

    Tensor3 scalar(1, 1, 1);
    scalar(0, 0, 0) = -3.0;
    CHECK(fro_norm(scalar) == 3.0);

    Tensor3 ones(2, 2, 2);
    ones.vec().setOnes();
    CHECK(fro_norm(ones) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
}

TEST_CASE("inf_norm") {
    CHECK(inf_norm(Tensor3(2, 5, 3)) == 0.0);

    Tensor3 x(3, 1, 1);
    x(0, 0, 0) = 1.0;
    x(1, 0, 0) = -5.0;
    x(2, 0, 0) = 2.0;
    CHECK(inf_norm(x) == 5.0);

    Tensor3 img = oracles::random_tensor(6, 6, 3, 7);
    img.vec() = img.vec().cwiseAbs() / img.vec().cwiseAbs().maxCoeff();
    img(2, 3, 1) = 1.0;  // saturated pixel
    CHECK(inf_norm(img) == 1.0);
}

TEST_CASE("hadamard") {
    const Tensor3 x = oracles::random_tensor(3, 2, 4, 11);

    Tensor3 ones(3, 2, 4);
    ones.vec().setOnes();
    CHECK(fro_norm(hadamard(x, ones) - x) == 0.0);
    CHECK(fro_norm(hadamard(x, Tensor3(3, 2, 4))) == 0.0);

    const Tensor3 y = oracles::random_tensor(3, 2, 4, 12);
    const Tensor3 z = hadamard(x, y);
    for (Index k = 0; k < 4; ++k)
        for (Index j = 0; j < 2; ++j)
            for (Index i = 0; i < 3; ++i) CHECK(z(i, j, k) == x(i, j, k) * y(i, j, k));

    CHECK_THROWS_AS(hadamard(x, Tensor3(3, 2, 5)), std::invalid_argument);
}

TEST_CASE("mask_project") {
    const Tensor3 x = oracles::random_tensor(4, 5, 3, 21);
    MaskTensor all(4, 5, 3);
    for (Index n = 0; n < all.size(); ++n) all.set_linear(n, true);
    CHECK(fro_norm(mask_project(x, all) - x) == 0.0);

    const MaskTensor none(4, 5, 3);
    CHECK(fro_norm(mask_project(x, none)) == 0.0);

    MaskTensor half(4, 5, 3);
    for (Index n = 0; n < half.size(); ++n) half.set_linear(n, n % 2 == 0);
    const double a = fro_norm(mask_project(x, half));
    const double b = fro_norm(mask_project(x, half.complement()));
    CHECK(a * a + b * b == doctest::Approx(fro_norm(x) * fro_norm(x)).epsilon(1e-14));

    // idempotence
    const Tensor3 once = mask_project(x, half);
    CHECK(fro_norm(mask_project(once, half) - once) == 0.0);

    CHECK_THROWS_AS(mask_project(x, MaskTensor(4, 5, 2)), std::invalid_argument);
}

TEST_CASE("relative_error") {
    const Tensor3 x = oracles::random_tensor(3, 3, 3, 31);
    CHECK(relative_error(x, x) == 0.0);
    CHECK(relative_error(x, Tensor3(3, 3, 3)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(relative_error(x, x * 2.0) == doctest::Approx(1.0).epsilon(1e-14));

    const Tensor3 y = oracles::random_tensor(3, 3, 3, 32);
    CHECK(relative_error(x * 0.7, y * 0.7) ==
          doctest::Approx(relative_error(x, y)).epsilon(1e-12));

    CHECK_THROWS_AS(relative_error(Tensor3(3, 3, 3), x), std::invalid_argument);
}

TEST_CASE("psnr") {
    // ||X||_inf = 1 and ||X - Y||_F = 0.01 gives 20 dB in the table form
    Tensor3 x(1, 2, 1);
    x(0, 0, 0) = 1.0;
    Tensor3 y = x;
    y(0, 1, 0) = 0.01;
    const Psnr p = psnr(x, y);
    CHECK_FALSE(p.exact);
    CHECK(p.decibels == doctest::Approx(20.0).epsilon(1e-12));

    CHECK(psnr(x, x).exact);
    CHECK(psnr_standard(x, x).exact);

    Tensor3 a(1, 1, 1), b(1, 1, 1);
    a(0, 0, 0) = 10.0;
    b(0, 0, 0) = 0.0;
    CHECK(psnr(a, b).decibels == doctest::Approx(0.0).epsilon(1e-12));

    // standard form carries the pixel count and squares
    Tensor3 u(2, 2, 1), v(2, 2, 1);
    u.vec() << 1.0, 0.5, 0.25, 0.125;
    v = u;
    v(1, 1, 0) += 0.1;
    const double expected = 10.0 * std::log10(1.0 * 4.0 / (0.1 * 0.1));
    CHECK(psnr_standard(u, v).decibels == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("linearization and accessors") {
    Tensor3 x(4, 3, 5);
    double c = 0.5;
    for (Index k = 0; k < 5; ++k)
        for (Index j = 0; j < 3; ++j)
            for (Index i = 0; i < 4; ++i) {
                x(i, j, k) = c;
                CHECK(x(i, j, k) == c);
                c += 1.0;
            }
    // slice/tube views agree with direct index arithmetic
    for (Index k = 0; k < 5; ++k) {
        const auto s = x.slice(k);
        for (Index j = 0; j < 3; ++j)
            for (Index i = 0; i < 4; ++i) {
                CHECK(s(i, j) == x.data()[i + j * 4 + k * 12]);
                CHECK(x.tube(i, j)[k] == x(i, j, k));
            }
    }
    CHECK_THROWS_AS(x.slice(5), std::out_of_range);
    CHECK_THROWS_AS(x.tube(4, 0), std::out_of_range);
    CHECK_THROWS_AS(Tensor3(0, 1, 1), std::invalid_argument);
}
