#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "rfkit/features.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/rng.hpp"

using namespace rfkit;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("fourier sampling follows the rbf spectral density") {
    // sigma=2 -> omega ~ N(0, 1/4)
    const auto map =
        sample_map(FeatureMapSpec::fourier(2.0, 100000, RngStream(3, 0)), 1);
    const double mean = map.omegas.mean();
    const double var = (map.omegas.array() - mean).square().mean();
    CHECK(std::abs(var - 0.25) < 0.01);
    CHECK(map.phases.minCoeff() >= 0.0);
    CHECK(map.phases.maxCoeff() < kTwoPi);
}

TEST_CASE("walsh phases are dyadic") {
    const auto map = sample_map(FeatureMapSpec::walsh(1.0, 1000, RngStream(4, 0)), 2);
    const double q = std::numbers::pi / 2.0;
    for (Index k = 0; k < map.phases.size(); ++k) {
        const double r = map.phases(k) / q;
        CHECK(std::abs(r - std::round(r)) < 1e-12);
        CHECK(map.phases(k) >= 0.0);
        CHECK(map.phases(k) < kTwoPi);
    }
}

TEST_CASE("re-sampling the same spec reproduces the identical map") {
    for (const auto& spec :
         {FeatureMapSpec::fourier(1.0, 64, RngStream(7, 1)),
          FeatureMapSpec::stump(4.0, Vector::Constant(2, -2.0), Vector::Constant(2, 2.0),
                                64, RngStream(7, 2)),
          FeatureMapSpec::binning(1.0, Vector::Constant(2, -2.0),
                                  Vector::Constant(2, 2.0), 64, RngStream(7, 3))}) {
        const auto a = sample_map(spec, 2);
        const auto b = sample_map(spec, 2);
        CHECK(a.omegas == b.omegas);
        CHECK(a.phases == b.phases);
        CHECK(a.stump_dims == b.stump_dims);
        CHECK(a.bin_pitches == b.bin_pitches);
        CHECK(a.bin_offsets == b.bin_offsets);
    }
}

TEST_CASE("fourier transform formula and bounds") {
    SUBCASE("hand-built D=1 map: z(0) = sqrt(2)*cos(b)") {
        auto map = sample_map(FeatureMapSpec::fourier(1.0, 1, RngStream(0, 0)), 1);
        map.omegas(0, 0) = 1.0;
        map.phases(0) = 0.0;
        Matrix x(1, 1);
        x << 0.0;
        const Matrix z = transform(map, x);
        CHECK(z(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }

    SUBCASE("entries bounded by sqrt(2/D)") {
        auto map = sample_map(FeatureMapSpec::fourier(0.5, 37, RngStream(1, 0)), 3);
        const Matrix x = draw_gaussian(RngStream(1, 1), 50, 3, 2.0);
        const Matrix z = transform(map, x);
        const double bound = std::sqrt(2.0 / 37.0);
        CHECK(z.cwiseAbs().maxCoeff() <= bound + 1e-15);
        CHECK(z.cols() == 37);
    }

    SUBCASE("squarewave entries are exactly +/- sqrt(2/D)") {
        auto map = sample_map(FeatureMapSpec::squarewave(1.0, 16, RngStream(2, 0)), 2);
        const Matrix x = draw_gaussian(RngStream(2, 1), 20, 2, 1.0);
        const Matrix z = transform(map, x);
        const double s = std::sqrt(2.0 / 16.0);
        for (Index i = 0; i < z.size(); ++i) {
            CHECK((z(i / 16, i % 16) == s || z(i / 16, i % 16) == -s));
        }
    }
}

TEST_CASE("stump and binning self-products equal one") {
    const Vector lo = Vector::Constant(2, -3.0), hi = Vector::Constant(2, 3.0);
    const Matrix x = draw_uniform(RngStream(5, 0), 40, -3.0, 3.0).reshaped(20, 2);

    auto stump = sample_map(FeatureMapSpec::stump(12.0, lo, hi, 500, RngStream(5, 1)), 2);
    const Matrix zs = transform(stump, x);
    CHECK(zs.cols() == 1000);  // paired channels
    for (Index i = 0; i < x.rows(); ++i) {
        CHECK(std::abs(zs.row(i).squaredNorm() - 1.0) < 1e-12);
    }

    auto binning =
        sample_map(FeatureMapSpec::binning(1.0, lo, hi, 500, RngStream(5, 2)), 2);
    const Matrix zb = transform(binning, x);
    for (Index i = 0; i < x.rows(); ++i) {
        CHECK(std::abs(zb.row(i).squaredNorm() - 1.0) < 1e-12);
    }
}

TEST_CASE("approx_gram approaches the exact rbf gram") {
    const Matrix x = draw_gaussian(RngStream(7, 1), 100, 2, 1.0);
    const Matrix exact = gram(KernelSpec::rbf(1.0), x, x);
    auto map = sample_map(FeatureMapSpec::fourier(1.0, 1000, RngStream(7, 2)), 2);
    const Matrix approx = approx_gram(map, x, x);
    CHECK((approx - exact).cwiseAbs().mean() <= 0.05);
}

TEST_CASE("approx_gram special values") {
    SUBCASE("stump diagonal is one") {
        const Vector lo = Vector::Constant(1, -1.0), hi = Vector::Constant(1, 1.0);
        auto map = sample_map(FeatureMapSpec::stump(2.0, lo, hi, 256, RngStream(8, 0)), 1);
        Matrix x(3, 1);
        x << -0.5, 0.0, 0.5;
        const Matrix g = approx_gram(map, x, x);
        for (Index i = 0; i < 3; ++i) CHECK(std::abs(g(i, i) - 1.0) < 1e-12);
    }

    SUBCASE("binning gives identical rows full similarity") {
        const Vector lo = Vector::Constant(2, -1.0), hi = Vector::Constant(2, 1.0);
        auto map =
            sample_map(FeatureMapSpec::binning(1.0, lo, hi, 400, RngStream(8, 1)), 2);
        Matrix x(2, 2);
        x << 0.25, -0.5, 0.25, -0.5;
        const Matrix g = approx_gram(map, x, x);
        CHECK(std::abs(g(0, 1) - 1.0) < 1e-12);
    }
}

TEST_CASE("fourier features are unbiased for the rbf kernel") {
    Matrix pts(2, 2);
    pts << 0.3, -0.7, 1.1, 0.4;
    const double exact =
        kernel_eval(KernelSpec::rbf(1.0), pts.row(0).transpose(), pts.row(1).transpose());
    double acc = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto map = sample_map(FeatureMapSpec::fourier(1.0, 4000, RngStream(s, 500)), 2);
        acc += approx_gram(map, pts, pts)(0, 1);
    }
    CHECK(std::abs(acc / 200.0 - exact) <= 0.01);
}

TEST_CASE("monte carlo error rate: quadrupling D roughly halves the error") {
    const Matrix x = draw_gaussian(RngStream(11, 1), 50, 2, 1.0);
    const Matrix exact = gram(KernelSpec::rbf(1.0), x, x);
    for (const Index d : {Index{250}, Index{1000}}) {
        double ratio_sum = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto m1 = sample_map(FeatureMapSpec::fourier(1.0, d, RngStream(seed, 100)), 2);
            auto m4 =
                sample_map(FeatureMapSpec::fourier(1.0, 4 * d, RngStream(seed, 101)), 2);
            const double mae1 = (approx_gram(m1, x, x) - exact).cwiseAbs().mean();
            const double mae4 = (approx_gram(m4, x, x) - exact).cwiseAbs().mean();
            ratio_sum += mae1 / mae4;
        }
        const double mean_ratio = ratio_sum / 20.0;
        CHECK(mean_ratio >= 1.4);
        CHECK(mean_ratio <= 2.8);
    }
}

TEST_CASE("stump sign average matches 1 - |x-y|/a for scalars") {
    // independent brute force: average (1 + s(x)s(y))/2 over explicit uniform
    // thresholds, no feature-map machinery involved
    const double lo = -1.0, hi = 3.0, a = hi - lo;
    const RngStream rng(13, 0);
    const double pairs[3][2] = {{0.0, 1.0}, {-0.5, 2.5}, {1.0, 1.2}};
    for (const auto& p : pairs) {
        double acc = 0.0;
        const std::uint64_t n = 100000;
        for (std::uint64_t t = 0; t < n; ++t) {
            const double thr = lo + (hi - lo) * rng.uniform(t);
            const double sx = p[0] >= thr ? 1.0 : -1.0;
            const double sy = p[1] >= thr ? 1.0 : -1.0;
            acc += 0.5 * (1.0 + sx * sy);
        }
        const double expect = 1.0 - std::abs(p[0] - p[1]) / a;
        CHECK(std::abs(acc / static_cast<double>(n) - expect) <= 0.005);
    }

    // the feature map reproduces the same expectation
    auto map = sample_map(FeatureMapSpec::stump(a, Vector::Constant(1, lo),
                                                Vector::Constant(1, hi), 100000,
                                                RngStream(13, 1)),
                          1);
    Matrix x(2, 1);
    x << 0.0, 1.0;
    const Matrix g = approx_gram(map, x, x);
    CHECK(std::abs(g(0, 1) - 0.75) <= 0.005);
}

TEST_CASE("binning bin-collision frequency matches the laplacian kernel") {
    const double sigma = 1.0;
    const Vector lo = Vector::Constant(1, -3.0), hi = Vector::Constant(1, 3.0);
    auto map =
        sample_map(FeatureMapSpec::binning(sigma, lo, hi, 10000, RngStream(5, 0)), 1);
    const double pts[3][2] = {{0.3, 1.1}, {-2.0, -1.7}, {0.0, 2.5}};
    for (const auto& p : pts) {
        Matrix x(2, 1);
        x << p[0], p[1];
        const Matrix g = approx_gram(map, x, x);
        const double expect = std::exp(-std::abs(p[0] - p[1]) / (2.0 * sigma * sigma));
        CHECK(std::abs(g(0, 1) - expect) <= 0.02);
    }
}

TEST_CASE("approx gram is positive semidefinite by construction") {
    const Matrix x = draw_gaussian(RngStream(17, 0), 80, 2, 1.0);
    const Vector lo = x.colwise().minCoeff(), hi = x.colwise().maxCoeff();
    std::vector<FeatureMapSpec> specs = {
        FeatureMapSpec::fourier(1.0, 150, RngStream(17, 1)),
        FeatureMapSpec::squarewave(1.0, 150, RngStream(17, 2)),
        FeatureMapSpec::walsh(1.0, 150, RngStream(17, 3)),
        FeatureMapSpec::stump(stump_default_a(lo, hi), lo, hi, 150, RngStream(17, 4)),
        FeatureMapSpec::binning(1.0, lo, hi, 150, RngStream(17, 5))};
    for (const auto& spec : specs) {
        auto map = sample_map(spec, 2);
        const Matrix g = approx_gram(map, x, x);
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * static_cast<double>(x.rows()));
    }
}

TEST_CASE("target kernels") {
    const auto fourier = FeatureMapSpec::fourier(1.5, 8, RngStream(0, 0));
    const auto k1 = target_kernel(fourier);
    REQUIRE(k1.has_value());
    CHECK(k1->family == KernelFamily::RBF);
    CHECK(k1->sigma == 1.5);

    CHECK_FALSE(target_kernel(FeatureMapSpec::squarewave(1.0, 8, RngStream(0, 0))));
    CHECK_FALSE(target_kernel(FeatureMapSpec::walsh(1.0, 8, RngStream(0, 0))));

    const auto binning = FeatureMapSpec::binning(1.0, Vector::Zero(1), Vector::Ones(1), 8,
                                                 RngStream(0, 0));
    const auto k2 = target_kernel(binning);
    REQUIRE(k2.has_value());
    CHECK(k2->family == KernelFamily::Laplacian);
    CHECK(k2->sigma == 1.0);

    const auto stump = FeatureMapSpec::stump(4.0, Vector::Zero(1), Vector::Ones(1), 8,
                                             RngStream(0, 0));
    const auto k3 = target_kernel(stump);
    REQUIRE(k3.has_value());
    CHECK(k3->family == KernelFamily::StumpL1);
    CHECK(k3->a == 4.0);
}

TEST_CASE("binning column allocation is first-seen row-major and frozen lookups skip "
          "unseen cells") {
    const Vector lo = Vector::Constant(1, -4.0), hi = Vector::Constant(1, 4.0);
    auto map = sample_map(FeatureMapSpec::binning(0.5, lo, hi, 3, RngStream(19, 0)), 1);

    Matrix x1(2, 1);
    x1 << 0.0, 3.0;
    const Matrix z1 = transform(map, x1);
    const Index w1 = map.out_cols;
    CHECK(z1.cols() == w1);
    CHECK(w1 >= 3);  // at least one cell per grid

    // transforming the same rows again discovers nothing new
    const Matrix z1b = transform(map, x1);
    CHECK(map.out_cols == w1);
    CHECK(z1b == z1);

    // a frozen transform of unseen points never widens the output
    Matrix far(1, 1);
    far << 1000.0;
    const Matrix zf = transform_frozen(map, far);
    CHECK(zf.cols() == w1);
    CHECK(zf.cwiseAbs().maxCoeff() == 0.0);
    CHECK(map.out_cols == w1);

    // growing with new points appends columns, keeping old identities
    const Matrix z2 = transform(map, far);
    CHECK(map.out_cols == w1 + 3);
    CHECK(z2.cols() == w1 + 3);
}

TEST_CASE("transform validates dimensions and specs") {
    auto map = sample_map(FeatureMapSpec::fourier(1.0, 4, RngStream(0, 0)), 2);
    const Matrix x = Matrix::Zero(3, 5);
    CHECK_THROWS_AS(transform(map, x), InvalidArgument);
    CHECK_THROWS_AS(sample_map(FeatureMapSpec::fourier(0.0, 4, RngStream(0, 0)), 2),
                    InvalidArgument);
    CHECK_THROWS_AS(sample_map(FeatureMapSpec::fourier(1.0, 0, RngStream(0, 0)), 2),
                    InvalidArgument);
    CHECK_THROWS_AS(
        sample_map(FeatureMapSpec::stump(1.0, Vector::Zero(3), Vector::Ones(3), 4,
                                         RngStream(0, 0)),
                   2),
        InvalidArgument);
}

TEST_CASE("stump_default_a sums the box widths") {
    Vector lo(2), hi(2);
    lo << -1.0, 0.0;
    hi << 1.0, 3.0;
    CHECK(stump_default_a(lo, hi) == doctest::Approx(5.0));
}
