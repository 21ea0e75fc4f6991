#include <doctest.h>

#include <cmath>
#include <numbers>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rfkit/csv.hpp"
#include "rfkit/dataset.hpp"

using namespace rfkit;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("dataset validation") {
    Matrix x(2, 2), y(2, 1);
    x << 1, 2, 3, 4;
    y << -1, 1;
    CHECK_NOTHROW(Dataset::make(x, y, Task::BinaryClassification));

    Matrix y_bad(2, 1);
    y_bad << -1, 0.5;
    CHECK_THROWS_AS(Dataset::make(x, y_bad, Task::BinaryClassification), InvalidArgument);

    Matrix y_two(2, 2);
    y_two.setOnes();
    CHECK_THROWS_AS(Dataset::make(x, y_two, Task::BinaryClassification), InvalidArgument);

    Matrix y_short(1, 1);
    y_short << 1;
    CHECK_THROWS_AS(Dataset::make(x, y_short, Task::Regression), InvalidArgument);
}

TEST_CASE("csv parse: targets from the last column") {
    const auto path = write_temp("rfkit_t1.csv", "1,2\n3,4\n5,6\n");
    const Dataset ds = load_csv_dataset(path, TargetSelector::parse("last"),
                                        Task::Regression, false);
    CHECK(ds.inputs.rows() == 3);
    CHECK(ds.inputs.cols() == 1);
    CHECK(ds.targets.cols() == 1);
    CHECK(ds.inputs(1, 0) == 3.0);
    CHECK(ds.targets(2, 0) == 6.0);
    std::remove(path.c_str());
}

TEST_CASE("csv parse: header flag skips the first line") {
    const auto path = write_temp("rfkit_t2.csv", "a,b\n1,2\n3,4\n");
    const Matrix m = load_csv_matrix(path, true);
    CHECK(m.rows() == 2);
    CHECK(m(0, 0) == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("csv parse: malformed row names its line") {
    const auto path = write_temp("rfkit_t3.csv", "1,abc\n2,3\n");
    try {
        load_csv_matrix(path, false);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("csv parse: non-finite and ragged rows are rejected") {
    const auto nan_path = write_temp("rfkit_t4.csv", "1,2\n3,nan\n");
    CHECK_THROWS_AS(load_csv_matrix(nan_path, false), DataError);
    std::remove(nan_path.c_str());

    const auto ragged = write_temp("rfkit_t5.csv", "1,2\n3\n");
    CHECK_THROWS_AS(load_csv_matrix(ragged, false), DataError);
    std::remove(ragged.c_str());

    CHECK_THROWS_AS(load_csv_matrix("/nonexistent/rfkit.csv", false), DataError);
}

TEST_CASE("target selectors") {
    CHECK(TargetSelector::parse("last").resolve(3) == std::vector<Index>{2});
    CHECK(TargetSelector::parse("last:2").resolve(4) == (std::vector<Index>{2, 3}));
    CHECK(TargetSelector::parse("0,2").resolve(4) == (std::vector<Index>{0, 2}));
    CHECK_THROWS_AS(TargetSelector::parse("last").resolve(1), DataError);
    CHECK_THROWS_AS(TargetSelector::parse("5").resolve(3), DataError);
    CHECK_THROWS_AS(TargetSelector::parse(""), InvalidArgument);
    CHECK_THROWS_AS(TargetSelector::parse("x"), InvalidArgument);
}

TEST_CASE("classification labels: validation and 0/1 remapping") {
    const auto path = write_temp("rfkit_t6.csv", "1,0\n2,1\n3,0\n");
    CHECK_THROWS_AS(load_csv_dataset(path, TargetSelector::parse("last"),
                                     Task::BinaryClassification, false, false),
                    InvalidArgument);
    const Dataset ds = load_csv_dataset(path, TargetSelector::parse("last"),
                                        Task::BinaryClassification, false, true);
    CHECK(ds.targets(0, 0) == -1.0);
    CHECK(ds.targets(1, 0) == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("csv round trip preserves values bit-exactly") {
    Matrix m(2, 2);
    m << 3.141592653589793, -1e-7, 2.0 / 3.0, 1e155;
    const auto path = (std::filesystem::temp_directory_path() / "rfkit_t7.csv").string();
    save_csv_matrix(path, m);
    const Matrix back = load_csv_matrix(path, false);
    CHECK(back == m);
    std::remove(path.c_str());
}

TEST_CASE("synthetic generators") {
    SUBCASE("sumsines formula") {
        Vector x0 = Vector::Zero(1);
        CHECK(synthetic_mean(SyntheticKind::SumSines, x0) == 0.0);
        Vector x1 = Vector::Constant(1, std::numbers::pi / 6.0);
        CHECK(synthetic_mean(SyntheticKind::SumSines, x1) == doctest::Approx(1.0));
    }

    SUBCASE("noise-free sumsines targets match the formula") {
        const Dataset ds = gen_synthetic(SyntheticKind::SumSines, 50, 3, 0.0,
                                         RngStream(4, 0));
        for (Index i = 0; i < ds.n_samples(); ++i) {
            CHECK(ds.targets(i, 0) ==
                  doctest::Approx(synthetic_mean(SyntheticKind::SumSines,
                                                 ds.inputs.row(i).transpose())));
        }
        CHECK(ds.inputs.minCoeff() >= -2.0);
        CHECK(ds.inputs.maxCoeff() <= 2.0);
    }

    SUBCASE("xorblobs labels are in {-1,+1} and follow the quadrant rule") {
        const Dataset ds = gen_synthetic(SyntheticKind::XorBlobs, 200, 2, 0.1,
                                         RngStream(5, 0));
        CHECK(ds.task == Task::BinaryClassification);
        for (Index i = 0; i < ds.n_samples(); ++i) {
            const double y = ds.targets(i, 0);
            CHECK((y == 1.0 || y == -1.0));
        }
        CHECK_THROWS_AS(gen_synthetic(SyntheticKind::XorBlobs, 10, 1, 0.1, RngStream(0, 0)),
                        InvalidArgument);
    }

    SUBCASE("sinc peak at the origin") {
        CHECK(synthetic_mean(SyntheticKind::SincND, Vector::Zero(3)) == 1.0);
    }

    SUBCASE("determinism") {
        const Dataset a = gen_synthetic(SyntheticKind::LinearNoise, 30, 4, 0.5,
                                        RngStream(9, 0));
        const Dataset b = gen_synthetic(SyntheticKind::LinearNoise, 30, 4, 0.5,
                                        RngStream(9, 0));
        CHECK(a.inputs == b.inputs);
        CHECK(a.targets == b.targets);
    }

    SUBCASE("bad parameters") {
        CHECK_THROWS_AS(gen_synthetic(SyntheticKind::SumSines, 0, 1, 0.1, RngStream(0, 0)),
                        InvalidArgument);
        CHECK_THROWS_AS(gen_synthetic(SyntheticKind::SumSines, 10, 1, -0.1, RngStream(0, 0)),
                        InvalidArgument);
        CHECK_THROWS_AS(synthetic_kind_from_name("nope"), InvalidArgument);
    }
}
