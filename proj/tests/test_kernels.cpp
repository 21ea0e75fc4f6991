#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "rfkit/kernels.hpp"
#include "rfkit/rng.hpp"

using namespace rfkit;

TEST_CASE("kernel_eval closed forms") {
    Vector x(2), y(2);
    x << 1, 0;
    y << 0, 1;  // |x-y|^2 = 2, |x-y|_1 = 2

    CHECK(kernel_eval(KernelSpec::rbf(1.0), x, x) == 1.0);
    CHECK(kernel_eval(KernelSpec::rbf(1.0), x, y) == doctest::Approx(std::exp(-1.0)));
    CHECK(kernel_eval(KernelSpec::laplacian(1.0), x, y) ==
          doctest::Approx(std::exp(-1.0)));
    CHECK(kernel_eval(KernelSpec::linear(), x, y) == 0.0);
    CHECK(kernel_eval(KernelSpec::polynomial(2.0, 1.0, 3), x, x) ==
          doctest::Approx(27.0));  // (2*1+1)^3

    Vector sx(1), sy(1);
    sx << 0;
    sy << 1;
    const auto stump = KernelSpec::stump_l1(4.0, Vector::Constant(1, -1.0),
                                            Vector::Constant(1, 3.0));
    CHECK(kernel_eval(stump, sx, sy) == doctest::Approx(0.75));
}

TEST_CASE("stump kernel rejects inputs outside its box") {
    const auto stump = KernelSpec::stump_l1(4.0, Vector::Constant(1, 0.0),
                                            Vector::Constant(1, 1.0));
    Vector in(1), out(1);
    in << 0.5;
    out << 2.0;
    CHECK_NOTHROW(kernel_eval(stump, in, in));
    CHECK_THROWS_AS(kernel_eval(stump, in, out), InvalidArgument);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(KernelSpec::rbf(0.0), InvalidArgument);
    CHECK_THROWS_AS(KernelSpec::laplacian(-1.0), InvalidArgument);
    CHECK_THROWS_AS(KernelSpec::polynomial(1.0, 0.0, 0), InvalidArgument);
    CHECK_THROWS_AS(KernelSpec::stump_l1(0.0, Vector::Zero(1), Vector::Ones(1)),
                    InvalidArgument);
    CHECK_THROWS_AS(KernelSpec::stump_l1(1.0, Vector::Ones(1), Vector::Zero(1)),
                    InvalidArgument);

    Vector x(2), y(3);
    x.setZero();
    y.setZero();
    CHECK_THROWS_AS(kernel_eval(KernelSpec::rbf(1.0), x, y), InvalidArgument);
}

TEST_CASE("gram basics") {
    SUBCASE("linear kernel on orthonormal rows gives the identity") {
        Matrix x(2, 2);
        x << 1, 0, 0, 1;
        const Matrix k = gram(KernelSpec::linear(), x, x);
        CHECK((k - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("rbf gram has a unit diagonal and is exactly symmetric") {
        const Matrix x = draw_gaussian(RngStream(1, 0), 60, 3, 1.0);
        const Matrix k = gram(KernelSpec::rbf(0.7), x, x);
        CHECK((k.diagonal().array() == 1.0).all());
        CHECK((k - k.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }

    SUBCASE("cross gram transposes") {
        const Matrix x1 = draw_gaussian(RngStream(2, 0), 20, 3, 1.0);
        const Matrix x2 = draw_gaussian(RngStream(2, 1), 30, 3, 1.0);
        for (const auto& spec :
             {KernelSpec::rbf(1.2), KernelSpec::laplacian(0.8), KernelSpec::linear(),
              KernelSpec::polynomial(0.5, 1.0, 2)}) {
            const Matrix k12 = gram(spec, x1, x2);
            const Matrix k21 = gram(spec, x2, x1);
            CHECK((k12 - k21.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }

    SUBCASE("column count mismatch") {
        const Matrix x1 = Matrix::Zero(2, 3);
        const Matrix x2 = Matrix::Zero(2, 4);
        CHECK_THROWS_AS(gram(KernelSpec::rbf(1.0), x1, x2), InvalidArgument);
    }
}

TEST_CASE("positive semidefiniteness of PSD families") {
    const Index n = 200;
    const Matrix x = draw_gaussian(RngStream(3, 0), n, 4, 1.0);
    for (const auto& spec : {KernelSpec::rbf(1.0), KernelSpec::laplacian(1.5),
                             KernelSpec::linear(), KernelSpec::polynomial(1.0, 0.5, 2)}) {
        const Matrix k = gram(spec, x, x);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * static_cast<double>(n));
    }
}

TEST_CASE("value bounds") {
    const Matrix x = draw_gaussian(RngStream(4, 0), 50, 2, 1.0);

    for (const auto& spec : {KernelSpec::rbf(0.5), KernelSpec::laplacian(0.5)}) {
        const Matrix k = gram(spec, x, x);
        CHECK(k.minCoeff() > 0.0);
        CHECK(k.maxCoeff() <= 1.0);
    }

    // stump entries live in [1 - d*(hi-lo)_max/a, 1]
    const Index d = 2;
    const Vector lo = Vector::Constant(d, -2.0), hi = Vector::Constant(d, 2.0);
    const double a = 8.0;
    Matrix xb = draw_uniform(RngStream(4, 1), 50 * d, -2.0, 2.0).reshaped(50, d);
    const Matrix k = gram(KernelSpec::stump_l1(a, lo, hi), xb, xb);
    CHECK(k.maxCoeff() <= 1.0);
    CHECK(k.minCoeff() >= 1.0 - static_cast<double>(d) * 4.0 / a);
}
