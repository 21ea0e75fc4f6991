// Exercises the shared-library C surface: handles, status codes, the
// thread-local error message, and round trips through files.

#include <doctest.h>
#include <rfkit.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("matrix create/get round trip") {
    const double data[6] = {1, 2, 3, 4, 5, 6};
    rf_matrix* m = nullptr;
    REQUIRE(rf_matrix_create(2, 3, data, &m) == RF_OK);
    CHECK(rf_matrix_rows(m) == 2);
    CHECK(rf_matrix_cols(m) == 3);
    double back[6] = {0};
    CHECK(rf_matrix_get(m, back) == RF_OK);
    CHECK(std::memcmp(back, data, sizeof(data)) == 0);
    rf_matrix_free(m);
}

TEST_CASE("status codes and the error message") {
    rf_matrix* m = nullptr;
    CHECK(rf_matrix_create(2, 2, nullptr, &m) == RF_OK);
    rf_matrix_free(m);

    const double nan_data[1] = {std::nan("")};
    m = nullptr;
    CHECK(rf_matrix_create(1, 1, nan_data, &m) == RF_ERR_DATA);
    CHECK(std::string(rf_last_error()).find("non-finite") != std::string::npos);
    CHECK(m == nullptr);

    CHECK(rf_matrix_create(1, 1, nullptr, nullptr) == RF_ERR_INVALID_ARGUMENT);
    CHECK(rf_matrix_load_csv("/nonexistent/file.csv", 0, &m) == RF_ERR_DATA);

    rf_kernel* k = nullptr;
    CHECK(rf_kernel_rbf(-1.0, &k) == RF_ERR_INVALID_ARGUMENT);
    CHECK(std::string(rf_last_error()).find("sigma") != std::string::npos);
}

TEST_CASE("datasets: csv, synthetic generation, slicing") {
    const auto path = temp_path("rfkit_capi_data.csv");
    std::ofstream(path) << "1,2\n3,4\n5,6\n";

    rf_dataset* ds = nullptr;
    REQUIRE(rf_dataset_load_csv(path.c_str(), "last", RF_TASK_REGRESSION, 0, 0, &ds) ==
            RF_OK);
    CHECK(rf_dataset_rows(ds) == 3);
    CHECK(rf_dataset_input_dim(ds) == 1);
    CHECK(rf_dataset_target_dim(ds) == 1);

    rf_dataset* head = nullptr;
    REQUIRE(rf_dataset_slice(ds, 0, 2, &head) == RF_OK);
    CHECK(rf_dataset_rows(head) == 2);
    CHECK(rf_dataset_slice(ds, 2, 5, &head) == RF_ERR_INVALID_ARGUMENT);
    rf_dataset_free(head);
    rf_dataset_free(ds);
    std::remove(path.c_str());

    rf_dataset* gen = nullptr;
    REQUIRE(rf_dataset_generate("xorblobs", 50, 2, 0.2, 7, &gen) == RF_OK);
    CHECK(rf_dataset_task(gen) == RF_TASK_CLASSIFICATION);
    rf_dataset_free(gen);

    CHECK(rf_dataset_generate("nope", 10, 2, 0.1, 0, &gen) == RF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("kernel evaluation and gram through the C surface") {
    rf_kernel* k = nullptr;
    REQUIRE(rf_kernel_rbf(1.0, &k) == RF_OK);
    const double x[2] = {1, 0}, y[2] = {0, 1};
    double v = 0.0;
    CHECK(rf_kernel_eval(k, x, y, 2, &v) == RF_OK);
    CHECK(v == doctest::Approx(std::exp(-1.0)));

    const double pts[4] = {0, 0, 1, 1};
    rf_matrix* xm = nullptr;
    REQUIRE(rf_matrix_create(2, 2, pts, &xm) == RF_OK);
    rf_matrix* g = nullptr;
    REQUIRE(rf_kernel_gram(k, xm, xm, &g) == RF_OK);
    double gv[4] = {0};
    CHECK(rf_matrix_get(g, gv) == RF_OK);
    CHECK(gv[0] == 1.0);
    CHECK(gv[3] == 1.0);
    CHECK(gv[1] == gv[2]);
    rf_matrix_free(g);
    rf_matrix_free(xm);
    rf_kernel_free(k);
}

TEST_CASE("feature maps: sampling, transform, target kernel") {
    rf_feature_map* f = nullptr;
    REQUIRE(rf_feature_map_sample("fourier", 1.0, nullptr, nullptr, 0, 16, 3, 0, 2, &f) ==
            RF_OK);
    CHECK(rf_feature_map_output_dim(f) == 16);

    const double pts[4] = {0.0, 0.0, 0.5, -0.5};
    rf_matrix* xm = nullptr;
    REQUIRE(rf_matrix_create(2, 2, pts, &xm) == RF_OK);
    rf_matrix* z = nullptr;
    REQUIRE(rf_feature_map_transform(f, xm, &z) == RF_OK);
    CHECK(rf_matrix_rows(z) == 2);
    CHECK(rf_matrix_cols(z) == 16);

    rf_kernel* target = nullptr;
    REQUIRE(rf_feature_map_target_kernel(f, &target) == RF_OK);
    CHECK(target != nullptr);
    rf_kernel_free(target);

    // squarewave claims no target kernel: NULL out, RF_OK
    rf_feature_map* sq = nullptr;
    REQUIRE(rf_feature_map_sample("squarewave", 1.0, nullptr, nullptr, 0, 8, 0, 0, 2,
                                  &sq) == RF_OK);
    rf_kernel* none = reinterpret_cast<rf_kernel*>(0x1);
    REQUIRE(rf_feature_map_target_kernel(sq, &none) == RF_OK);
    CHECK(none == nullptr);
    rf_feature_map_free(sq);

    // save / load keeps the transform identical
    const auto path = temp_path("rfkit_capi_map.json");
    REQUIRE(rf_feature_map_save(f, path.c_str()) == RF_OK);
    rf_feature_map* back = nullptr;
    REQUIRE(rf_feature_map_load(path.c_str(), &back) == RF_OK);
    rf_matrix* z2 = nullptr;
    REQUIRE(rf_feature_map_transform_frozen(back, xm, &z2) == RF_OK);
    std::vector<double> a(32), b(32);
    CHECK(rf_matrix_get(z, a.data()) == RF_OK);
    CHECK(rf_matrix_get(z2, b.data()) == RF_OK);
    CHECK(a == b);
    std::remove(path.c_str());

    rf_matrix_free(z2);
    rf_feature_map_free(back);
    rf_matrix_free(z);
    rf_matrix_free(xm);
    rf_feature_map_free(f);

    // box required for stump
    CHECK(rf_feature_map_sample("stump", 1.0, nullptr, nullptr, 0, 8, 0, 0, 2, &f) ==
          RF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fit, predict, snapshot round trip") {
    rf_dataset* train = nullptr;
    REQUIRE(rf_dataset_generate("sumsines", 200, 2, 0.1, 11, &train) == RF_OK);
    rf_dataset* test = nullptr;
    REQUIRE(rf_dataset_generate("sumsines", 50, 2, 0.1, 12, &test) == RF_OK);
    rf_matrix* test_x = nullptr;
    REQUIRE(rf_dataset_inputs(test, &test_x) == RF_OK);

    rf_fit_options opts;
    rf_fit_options_init(&opts);
    opts.lambda = 1e-3;

    rf_feature_map* map = nullptr;
    REQUIRE(rf_feature_map_sample("fourier", 1.0, nullptr, nullptr, 0, 64, 5, 0, 2,
                                  &map) == RF_OK);
    rf_model* model = nullptr;
    REQUIRE(rf_fit_rks(train, map, &opts, &model) == RF_OK);
    CHECK(rf_model_task(model) == RF_TASK_REGRESSION);
    CHECK(rf_model_bytes(model) > 0);

    rf_matrix* pred = nullptr;
    REQUIRE(rf_model_predict(model, test_x, &pred) == RF_OK);

    const auto path = temp_path("rfkit_capi_model.json");
    REQUIRE(rf_model_save(model, path.c_str()) == RF_OK);
    rf_model* back = nullptr;
    REQUIRE(rf_model_load(path.c_str(), &back) == RF_OK);
    rf_matrix* pred2 = nullptr;
    REQUIRE(rf_model_predict(back, test_x, &pred2) == RF_OK);

    std::vector<double> a(50), b(50);
    CHECK(rf_matrix_get(pred, a.data()) == RF_OK);
    CHECK(rf_matrix_get(pred2, b.data()) == RF_OK);
    CHECK(a == b);  // bit-exact reload
    std::remove(path.c_str());

    // predict_class is refused on a regression model
    rf_matrix* labels = nullptr;
    CHECK(rf_model_predict_class(model, test_x, &labels) == RF_ERR_INVALID_ARGUMENT);

    rf_matrix_free(pred2);
    rf_model_free(back);
    rf_matrix_free(pred);
    rf_model_free(model);
    rf_feature_map_free(map);
    rf_matrix_free(test_x);
    rf_dataset_free(test);
    rf_dataset_free(train);
}

TEST_CASE("numeric failures surface as RF_ERR_NUMERIC") {
    // an indefinite "kernel" matrix: polynomial with a large negative offset
    rf_dataset* train = nullptr;
    REQUIRE(rf_dataset_generate("linearnoise", 30, 2, 0.1, 3, &train) == RF_OK);
    rf_kernel* k = nullptr;
    REQUIRE(rf_kernel_polynomial(1.0, -50.0, 1, &k) == RF_OK);
    rf_fit_options opts;
    rf_fit_options_init(&opts);
    opts.lambda = 0.0;
    rf_model* model = nullptr;
    CHECK(rf_fit_krr(train, k, &opts, &model) == RF_ERR_NUMERIC);
    CHECK(std::strlen(rf_last_error()) > 0);
    rf_kernel_free(k);
    rf_dataset_free(train);
}

TEST_CASE("cross-validation through the C surface") {
    rf_dataset* data = nullptr;
    REQUIRE(rf_dataset_generate("linearnoise", 60, 3, 0.0, 21, &data) == RF_OK);

    const double lambdas[3] = {1e-9, 1e-3, 1.0};
    rf_cv_report* rep = nullptr;
    REQUIRE(rf_cross_validate(data, "lr", nullptr, lambdas, 3, nullptr, 0, nullptr, 0, 5,
                              "rmse", 3, 0, 1, 1, &rep) == RF_OK);
    CHECK(rf_cv_report_size(rep) == 3);
    const auto sel = rf_cv_report_selected(rep);
    double lambda = -1, score = -1;
    CHECK(rf_cv_report_row(rep, sel, &lambda, nullptr, nullptr, &score, nullptr, nullptr,
                           nullptr) == RF_OK);
    CHECK(lambda == 1e-9);
    CHECK(score <= 1e-8);
    CHECK(rf_cv_report_row(rep, 99, &lambda, nullptr, nullptr, nullptr, nullptr, nullptr,
                           nullptr) == RF_ERR_INVALID_ARGUMENT);

    std::vector<int64_t> folds(static_cast<std::size_t>(rf_cv_report_fold_count(rep)));
    REQUIRE(rf_cv_report_folds(rep, folds.data()) == RF_OK);
    CHECK(folds.size() == 60);
    for (auto f : folds) {
        CHECK(f >= 0);
        CHECK(f < 5);
    }
    rf_cv_report_free(rep);

    // rks needs feature counts
    const double params[1] = {1.0};
    CHECK(rf_cross_validate(data, "rks", "fourier", lambdas, 3, params, 1, nullptr, 0, 5,
                            "rmse", 3, 0, 1, 1, &rep) == RF_ERR_INVALID_ARGUMENT);
    rf_dataset_free(data);
}

TEST_CASE("standardized range helper matches the fit path") {
    rf_dataset* data = nullptr;
    REQUIRE(rf_dataset_generate("sumsines", 100, 2, 0.1, 4, &data) == RF_OK);
    std::vector<double> lo(2), hi(2);
    REQUIRE(rf_dataset_standardized_input_range(data, 1, 1, lo.data(), hi.data()) ==
            RF_OK);
    CHECK(lo[0] < hi[0]);
    CHECK(lo[1] < hi[1]);
    // standardized U[-2,2] spans about +/- sqrt(3)
    CHECK(lo[0] > -2.5);
    CHECK(hi[0] < 2.5);

    rf_matrix* xs = nullptr;
    REQUIRE(rf_dataset_standardized_inputs(data, 1, 1, &xs) == RF_OK);
    CHECK(rf_matrix_rows(xs) == 100);
    rf_matrix_free(xs);
    rf_dataset_free(data);
}
