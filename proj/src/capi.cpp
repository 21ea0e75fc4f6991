#include "rfkit.h"

#include <cstring>
#include <exception>
#include <string>

#include "rfkit/csv.hpp"
#include "rfkit/dataset.hpp"
#include "rfkit/features.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/modelsel.hpp"
#include "rfkit/serialize.hpp"
#include "rfkit/solvers.hpp"

struct rf_matrix {
    rfkit::Matrix m;
};
struct rf_dataset {
    rfkit::Dataset d;
};
struct rf_kernel {
    rfkit::KernelSpec k;
};
struct rf_feature_map {
    rfkit::FittedFeatureMap f;
};
struct rf_model {
    rfkit::FitModel m;
};
struct rf_cv_report {
    rfkit::CvReport r;
};

namespace {

thread_local char g_error[1024] = {0};

void set_error(const char* msg) noexcept {
    std::strncpy(g_error, msg, sizeof(g_error) - 1);
    g_error[sizeof(g_error) - 1] = '\0';
}

int fail(const std::exception& e, int code) noexcept {
    set_error(e.what());
    return code;
}

// Runs fn inside the catch-all boundary; exceptions become status codes.
template <typename Fn>
int guarded(Fn&& fn) noexcept {
    try {
        fn();
        g_error[0] = '\0';
        return RF_OK;
    } catch (const rfkit::InvalidArgument& e) {
        return fail(e, RF_ERR_INVALID_ARGUMENT);
    } catch (const rfkit::DataError& e) {
        return fail(e, RF_ERR_DATA);
    } catch (const rfkit::NumericError& e) {
        return fail(e, RF_ERR_NUMERIC);
    } catch (const std::exception& e) {
        return fail(e, RF_ERR_INTERNAL);
    } catch (...) {
        set_error("unknown error");
        return RF_ERR_INTERNAL;
    }
}

int require(bool cond, const char* msg) noexcept {
    if (cond) return RF_OK;
    set_error(msg);
    return RF_ERR_INVALID_ARGUMENT;
}

rfkit::Matrix from_row_major(int64_t rows, int64_t cols, const double* data) {
    if (rows < 0 || cols < 0) throw rfkit::InvalidArgument("matrix: negative shape");
    rfkit::Matrix m = rfkit::Matrix::Zero(rows, cols);
    if (data) {
        for (int64_t i = 0; i < rows; ++i) {
            for (int64_t j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
        }
        rfkit::require_finite(m, "matrix data");
    }
    return m;
}

rfkit::Task task_from_int(int task) {
    if (task == RF_TASK_REGRESSION) return rfkit::Task::Regression;
    if (task == RF_TASK_CLASSIFICATION) return rfkit::Task::BinaryClassification;
    throw rfkit::InvalidArgument("task must be 0 (regression) or 1 (classification)");
}

rfkit::Vector vector_from(const double* data, int64_t n, const char* what) {
    if (!data) throw rfkit::InvalidArgument(std::string(what) + ": null pointer");
    rfkit::Vector v(n);
    for (int64_t i = 0; i < n; ++i) v(i) = data[i];
    return v;
}

rfkit::FitOptions fit_options_from(const rf_fit_options* opts) {
    rfkit::FitOptions o;
    if (opts) {
        o.lambda = opts->lambda;
        o.standardize = opts->standardize != 0;
        o.scale_inputs = opts->scale_inputs != 0;
    }
    return o;
}

}  // namespace

extern "C" {

const char* rf_version(void) { return "0.1.0"; }

const char* rf_last_error(void) { return g_error; }

/* ---- matrices ---------------------------------------------------------- */

int rf_matrix_create(int64_t rows, int64_t cols, const double* row_major,
                     rf_matrix** out) {
    if (int rc = require(out != nullptr, "rf_matrix_create: out is null")) return rc;
    return guarded([&] { *out = new rf_matrix{from_row_major(rows, cols, row_major)}; });
}

int64_t rf_matrix_rows(const rf_matrix* m) { return m ? m->m.rows() : 0; }

int64_t rf_matrix_cols(const rf_matrix* m) { return m ? m->m.cols() : 0; }

int rf_matrix_get(const rf_matrix* m, double* row_major_out) {
    if (int rc = require(m && row_major_out, "rf_matrix_get: null argument")) return rc;
    return guarded([&] {
        for (rfkit::Index i = 0; i < m->m.rows(); ++i) {
            for (rfkit::Index j = 0; j < m->m.cols(); ++j) {
                row_major_out[i * m->m.cols() + j] = m->m(i, j);
            }
        }
    });
}

int rf_matrix_load_csv(const char* path, int has_header, rf_matrix** out) {
    if (int rc = require(path && out, "rf_matrix_load_csv: null argument")) return rc;
    return guarded(
        [&] { *out = new rf_matrix{rfkit::load_csv_matrix(path, has_header != 0)}; });
}

int rf_matrix_save_csv(const rf_matrix* m, const char* path) {
    if (int rc = require(m && path, "rf_matrix_save_csv: null argument")) return rc;
    return guarded([&] { rfkit::save_csv_matrix(path, m->m); });
}

void rf_matrix_free(rf_matrix* m) { delete m; }

/* ---- datasets ---------------------------------------------------------- */

int rf_dataset_create(const rf_matrix* inputs, const rf_matrix* targets, int task,
                      rf_dataset** out) {
    if (int rc = require(inputs && targets && out, "rf_dataset_create: null argument"))
        return rc;
    return guarded([&] {
        *out = new rf_dataset{
            rfkit::Dataset::make(inputs->m, targets->m, task_from_int(task))};
    });
}

int rf_dataset_load_csv(const char* path, const char* target_selector, int task,
                        int has_header, int remap01, rf_dataset** out) {
    if (int rc =
            require(path && target_selector && out, "rf_dataset_load_csv: null argument"))
        return rc;
    return guarded([&] {
        const auto sel = rfkit::TargetSelector::parse(target_selector);
        *out = new rf_dataset{rfkit::load_csv_dataset(path, sel, task_from_int(task),
                                                      has_header != 0, remap01 != 0)};
    });
}

int rf_dataset_generate(const char* kind, int64_t n, int64_t d, double noise_std,
                        uint64_t seed, rf_dataset** out) {
    if (int rc = require(kind && out, "rf_dataset_generate: null argument")) return rc;
    return guarded([&] {
        *out = new rf_dataset{rfkit::gen_synthetic(rfkit::synthetic_kind_from_name(kind),
                                                   n, d, noise_std,
                                                   rfkit::RngStream(seed, 0))};
    });
}

int rf_dataset_save_csv(const rf_dataset* ds, const char* path, int header) {
    if (int rc = require(ds && path, "rf_dataset_save_csv: null argument")) return rc;
    return guarded([&] { rfkit::save_csv_dataset(path, ds->d, header != 0); });
}

int64_t rf_dataset_rows(const rf_dataset* ds) { return ds ? ds->d.n_samples() : 0; }

int64_t rf_dataset_input_dim(const rf_dataset* ds) { return ds ? ds->d.input_dim() : 0; }

int64_t rf_dataset_target_dim(const rf_dataset* ds) { return ds ? ds->d.target_dim() : 0; }

int rf_dataset_task(const rf_dataset* ds) {
    return ds && ds->d.task == rfkit::Task::BinaryClassification ? RF_TASK_CLASSIFICATION
                                                                 : RF_TASK_REGRESSION;
}

int rf_dataset_inputs(const rf_dataset* ds, rf_matrix** out) {
    if (int rc = require(ds && out, "rf_dataset_inputs: null argument")) return rc;
    return guarded([&] { *out = new rf_matrix{ds->d.inputs}; });
}

int rf_dataset_targets(const rf_dataset* ds, rf_matrix** out) {
    if (int rc = require(ds && out, "rf_dataset_targets: null argument")) return rc;
    return guarded([&] { *out = new rf_matrix{ds->d.targets}; });
}

int rf_dataset_slice(const rf_dataset* ds, int64_t begin, int64_t count,
                     rf_dataset** out) {
    if (int rc = require(ds && out, "rf_dataset_slice: null argument")) return rc;
    return guarded([&] { *out = new rf_dataset{ds->d.slice(begin, count)}; });
}

int rf_dataset_standardized_input_range(const rf_dataset* ds, int standardize,
                                        int scale_inputs, double* lo, double* hi) {
    if (int rc =
            require(ds && lo && hi, "rf_dataset_standardized_input_range: null argument"))
        return rc;
    return guarded([&] {
        const rfkit::Standardizer s =
            standardize
                ? rfkit::standardize_fit(ds->d.inputs, ds->d.targets, scale_inputs != 0)
                : rfkit::Standardizer::identity(ds->d.input_dim(), ds->d.target_dim());
        const rfkit::Matrix xs = s.apply_inputs(ds->d.inputs);
        for (rfkit::Index j = 0; j < xs.cols(); ++j) {
            lo[j] = xs.col(j).minCoeff();
            hi[j] = xs.col(j).maxCoeff();
        }
    });
}

int rf_dataset_standardized_inputs(const rf_dataset* ds, int standardize,
                                   int scale_inputs, rf_matrix** out) {
    if (int rc = require(ds && out, "rf_dataset_standardized_inputs: null argument"))
        return rc;
    return guarded([&] {
        const rfkit::Standardizer s =
            standardize
                ? rfkit::standardize_fit(ds->d.inputs, ds->d.targets, scale_inputs != 0)
                : rfkit::Standardizer::identity(ds->d.input_dim(), ds->d.target_dim());
        *out = new rf_matrix{s.apply_inputs(ds->d.inputs)};
    });
}

void rf_dataset_free(rf_dataset* ds) { delete ds; }

/* ---- exact kernels ----------------------------------------------------- */

int rf_kernel_linear(rf_kernel** out) {
    if (int rc = require(out != nullptr, "rf_kernel_linear: out is null")) return rc;
    return guarded([&] { *out = new rf_kernel{rfkit::KernelSpec::linear()}; });
}

int rf_kernel_polynomial(double a, double b, int degree, rf_kernel** out) {
    if (int rc = require(out != nullptr, "rf_kernel_polynomial: out is null")) return rc;
    return guarded(
        [&] { *out = new rf_kernel{rfkit::KernelSpec::polynomial(a, b, degree)}; });
}

int rf_kernel_rbf(double sigma, rf_kernel** out) {
    if (int rc = require(out != nullptr, "rf_kernel_rbf: out is null")) return rc;
    return guarded([&] { *out = new rf_kernel{rfkit::KernelSpec::rbf(sigma)}; });
}

int rf_kernel_laplacian(double sigma, rf_kernel** out) {
    if (int rc = require(out != nullptr, "rf_kernel_laplacian: out is null")) return rc;
    return guarded([&] { *out = new rf_kernel{rfkit::KernelSpec::laplacian(sigma)}; });
}

int rf_kernel_stump_l1(double a, const double* box_lo, const double* box_hi, int64_t dim,
                       rf_kernel** out) {
    if (int rc = require(out != nullptr, "rf_kernel_stump_l1: out is null")) return rc;
    return guarded([&] {
        *out = new rf_kernel{rfkit::KernelSpec::stump_l1(
            a, vector_from(box_lo, dim, "box_lo"), vector_from(box_hi, dim, "box_hi"))};
    });
}

int rf_kernel_eval(const rf_kernel* k, const double* x, const double* y, int64_t dim,
                   double* out) {
    if (int rc = require(k && x && y && out, "rf_kernel_eval: null argument")) return rc;
    return guarded([&] {
        *out = rfkit::kernel_eval(k->k, vector_from(x, dim, "x"),
                                  vector_from(y, dim, "y"));
    });
}

int rf_kernel_gram(const rf_kernel* k, const rf_matrix* x1, const rf_matrix* x2,
                   rf_matrix** out) {
    if (int rc = require(k && x1 && x2 && out, "rf_kernel_gram: null argument")) return rc;
    return guarded([&] {
        // pass the identical object through so the symmetric path engages
        *out = new rf_matrix{x1 == x2 ? rfkit::gram(k->k, x1->m, x1->m)
                                      : rfkit::gram(k->k, x1->m, x2->m)};
    });
}

void rf_kernel_free(rf_kernel* k) { delete k; }

/* ---- random feature maps ----------------------------------------------- */

int rf_feature_map_sample(const char* family, double param, const double* box_lo,
                          const double* box_hi, int64_t box_dim, int64_t n_features,
                          uint64_t seed, uint64_t stream, int64_t input_dim,
                          rf_feature_map** out) {
    if (int rc = require(family && out, "rf_feature_map_sample: null argument")) return rc;
    return guarded([&] {
        const rfkit::FeatureFamily fam = rfkit::feature_family_from_name(family);
        const rfkit::RngStream rng(seed, stream);
        rfkit::FeatureMapSpec spec;
        switch (fam) {
            case rfkit::FeatureFamily::Fourier:
                spec = rfkit::FeatureMapSpec::fourier(param, n_features, rng);
                break;
            case rfkit::FeatureFamily::SquareWave:
                spec = rfkit::FeatureMapSpec::squarewave(param, n_features, rng);
                break;
            case rfkit::FeatureFamily::Walsh:
                spec = rfkit::FeatureMapSpec::walsh(param, n_features, rng);
                break;
            case rfkit::FeatureFamily::Stump:
                spec = rfkit::FeatureMapSpec::stump(
                    param, vector_from(box_lo, box_dim, "box_lo"),
                    vector_from(box_hi, box_dim, "box_hi"), n_features, rng);
                break;
            case rfkit::FeatureFamily::Binning:
                spec = rfkit::FeatureMapSpec::binning(
                    param, vector_from(box_lo, box_dim, "box_lo"),
                    vector_from(box_hi, box_dim, "box_hi"), n_features, rng);
                break;
        }
        *out = new rf_feature_map{rfkit::sample_map(spec, input_dim)};
    });
}

int64_t rf_feature_map_output_dim(const rf_feature_map* f) {
    return f ? f->f.output_dim() : 0;
}

int rf_feature_map_transform(rf_feature_map* f, const rf_matrix* x, rf_matrix** out) {
    if (int rc = require(f && x && out, "rf_feature_map_transform: null argument"))
        return rc;
    return guarded([&] { *out = new rf_matrix{rfkit::transform(f->f, x->m)}; });
}

int rf_feature_map_transform_frozen(const rf_feature_map* f, const rf_matrix* x,
                                    rf_matrix** out) {
    if (int rc = require(f && x && out, "rf_feature_map_transform_frozen: null argument"))
        return rc;
    return guarded([&] { *out = new rf_matrix{rfkit::transform_frozen(f->f, x->m)}; });
}

int rf_feature_map_approx_gram(rf_feature_map* f, const rf_matrix* x1,
                               const rf_matrix* x2, rf_matrix** out) {
    if (int rc =
            require(f && x1 && x2 && out, "rf_feature_map_approx_gram: null argument"))
        return rc;
    return guarded([&] {
        *out = new rf_matrix{x1 == x2 ? rfkit::approx_gram(f->f, x1->m, x1->m)
                                      : rfkit::approx_gram(f->f, x1->m, x2->m)};
    });
}

int rf_feature_map_target_kernel(const rf_feature_map* f, rf_kernel** out) {
    if (int rc = require(f && out, "rf_feature_map_target_kernel: null argument"))
        return rc;
    return guarded([&] {
        const auto k = rfkit::target_kernel(f->f.spec);
        *out = k ? new rf_kernel{*k} : nullptr;
    });
}

int rf_feature_map_save(const rf_feature_map* f, const char* path) {
    if (int rc = require(f && path, "rf_feature_map_save: null argument")) return rc;
    return guarded([&] { rfkit::save_feature_map(f->f, path); });
}

int rf_feature_map_load(const char* path, rf_feature_map** out) {
    if (int rc = require(path && out, "rf_feature_map_load: null argument")) return rc;
    return guarded([&] { *out = new rf_feature_map{rfkit::load_feature_map(path)}; });
}

void rf_feature_map_free(rf_feature_map* f) { delete f; }

/* ---- solvers ------------------------------------------------------------ */

void rf_fit_options_init(rf_fit_options* opts) {
    if (!opts) return;
    opts->lambda = 0.0;
    opts->standardize = 1;
    opts->scale_inputs = 1;
}

int rf_fit_lr(const rf_dataset* ds, const rf_fit_options* opts, rf_model** out) {
    if (int rc = require(ds && out, "rf_fit_lr: null argument")) return rc;
    return guarded([&] {
        *out = new rf_model{rfkit::fit_lr(ds->d.inputs, ds->d.targets,
                                          fit_options_from(opts), ds->d.task)};
    });
}

int rf_fit_krr(const rf_dataset* ds, const rf_kernel* k, const rf_fit_options* opts,
               rf_model** out) {
    if (int rc = require(ds && k && out, "rf_fit_krr: null argument")) return rc;
    return guarded([&] {
        *out = new rf_model{rfkit::fit_krr(ds->d.inputs, ds->d.targets, k->k,
                                           fit_options_from(opts), ds->d.task)};
    });
}

int rf_fit_rks(const rf_dataset* ds, rf_feature_map* f, const rf_fit_options* opts,
               rf_model** out) {
    if (int rc = require(ds && f && out, "rf_fit_rks: null argument")) return rc;
    return guarded([&] {
        *out = new rf_model{rfkit::fit_rks(ds->d.inputs, ds->d.targets, f->f,
                                           fit_options_from(opts), ds->d.task)};
    });
}

int rf_model_predict(const rf_model* m, const rf_matrix* x, rf_matrix** out) {
    if (int rc = require(m && x && out, "rf_model_predict: null argument")) return rc;
    return guarded([&] { *out = new rf_matrix{rfkit::predict(m->m, x->m)}; });
}

int rf_model_predict_class(const rf_model* m, const rf_matrix* x, rf_matrix** out) {
    if (int rc = require(m && x && out, "rf_model_predict_class: null argument")) return rc;
    return guarded([&] {
        const Eigen::VectorXi labels = rfkit::predict_class(m->m, x->m);
        rfkit::Matrix lm(labels.size(), 1);
        for (rfkit::Index i = 0; i < labels.size(); ++i) lm(i, 0) = labels(i);
        *out = new rf_matrix{std::move(lm)};
    });
}

int rf_model_task(const rf_model* m) {
    return m && m->m.task == rfkit::Task::BinaryClassification ? RF_TASK_CLASSIFICATION
                                                               : RF_TASK_REGRESSION;
}

int64_t rf_model_bytes(const rf_model* m) {
    return m ? static_cast<int64_t>(rfkit::model_bytes(m->m)) : 0;
}

int rf_model_save(const rf_model* m, const char* path) {
    if (int rc = require(m && path, "rf_model_save: null argument")) return rc;
    return guarded([&] { rfkit::save_model(m->m, path); });
}

int rf_model_load(const char* path, rf_model** out) {
    if (int rc = require(path && out, "rf_model_load: null argument")) return rc;
    return guarded([&] { *out = new rf_model{rfkit::load_model(path)}; });
}

void rf_model_free(rf_model* m) { delete m; }

/* ---- cross-validation --------------------------------------------------- */

int rf_cross_validate(const rf_dataset* ds, const char* method, const char* family,
                      const double* lambdas, int64_t n_lambdas, const double* params,
                      int64_t n_params, const int64_t* feature_counts,
                      int64_t n_feature_counts, int64_t folds, const char* metric,
                      uint64_t seed, uint64_t stream, int standardize, int scale_inputs,
                      rf_cv_report** out) {
    if (int rc =
            require(ds && method && metric && out, "rf_cross_validate: null argument"))
        return rc;
    if (int rc = require(lambdas != nullptr && n_lambdas > 0,
                         "rf_cross_validate: lambdas required"))
        return rc;
    return guarded([&] {
        rfkit::GridSpec grid;
        grid.lambdas.assign(lambdas, lambdas + n_lambdas);
        if (params && n_params > 0) grid.kernel_params.assign(params, params + n_params);
        if (feature_counts && n_feature_counts > 0) {
            grid.feature_counts.assign(feature_counts,
                                       feature_counts + n_feature_counts);
        }
        grid.folds = static_cast<int>(folds);
        grid.metric = rfkit::metric_from_name(metric);
        grid.rng = rfkit::RngStream(seed, stream);
        grid.fit.standardize = standardize != 0;
        grid.fit.scale_inputs = scale_inputs != 0;

        const rfkit::Method m = rfkit::method_from_name(method);
        if (m == rfkit::Method::KRR) {
            const std::string fam = family ? family : "rbf";
            if (fam == "linear") {
                grid.kernel_family = rfkit::KernelFamily::Linear;
            } else if (fam == "rbf") {
                grid.kernel_family = rfkit::KernelFamily::RBF;
            } else if (fam == "laplacian") {
                grid.kernel_family = rfkit::KernelFamily::Laplacian;
            } else {
                throw rfkit::InvalidArgument(
                    "cross-validation kernel family must be linear, rbf or laplacian");
            }
        } else if (m == rfkit::Method::RKS) {
            grid.feature_family =
                rfkit::feature_family_from_name(family ? family : "fourier");
        }
        *out = new rf_cv_report{rfkit::cross_validate(ds->d, m, grid)};
    });
}

int64_t rf_cv_report_size(const rf_cv_report* r) {
    return r ? static_cast<int64_t>(r->r.configs.size()) : 0;
}

int64_t rf_cv_report_selected(const rf_cv_report* r) {
    return r ? static_cast<int64_t>(r->r.selected) : 0;
}

int rf_cv_report_row(const rf_cv_report* r, int64_t i, double* lambda, double* param,
                     int64_t* n_features, double* mean_score, double* std_score,
                     double* mean_fit_seconds, int64_t* degenerate_folds) {
    if (int rc = require(r != nullptr, "rf_cv_report_row: report is null")) return rc;
    if (int rc = require(i >= 0 && i < static_cast<int64_t>(r->r.configs.size()),
                         "rf_cv_report_row: index out of range"))
        return rc;
    const auto& c = r->r.configs[static_cast<std::size_t>(i)];
    if (lambda) *lambda = c.lambda;
    if (param) *param = c.param;
    if (n_features) *n_features = c.n_features;
    if (mean_score) *mean_score = c.mean_score;
    if (std_score) *std_score = c.std_score;
    if (mean_fit_seconds) *mean_fit_seconds = c.mean_fit_seconds;
    if (degenerate_folds) *degenerate_folds = c.degenerate_folds;
    return RF_OK;
}

int64_t rf_cv_report_fold_count(const rf_cv_report* r) {
    return r ? static_cast<int64_t>(r->r.fold_assignment.size()) : 0;
}

int rf_cv_report_folds(const rf_cv_report* r, int64_t* out) {
    if (int rc = require(r && out, "rf_cv_report_folds: null argument")) return rc;
    for (std::size_t i = 0; i < r->r.fold_assignment.size(); ++i) {
        out[i] = r->r.fold_assignment[i];
    }
    return RF_OK;
}

void rf_cv_report_free(rf_cv_report* r) { delete r; }

}  // extern "C"
