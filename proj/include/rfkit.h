/*
 * rfkit C API: random-feature kernel machines behind a flat, ABI-stable
 * surface of opaque handles and integer status codes.
 *
 * Conventions:
 *   - Every fallible call returns RF_OK (0) or an rf_status code; the
 *     thread-local message from rf_last_error() describes the failure.
 *   - Out-parameters are written only on success.
 *   - Matrices cross the boundary as dense row-major double buffers.
 *   - Objects returned through rf_*_create/load/... are owned by the caller
 *     and released with the matching rf_*_free (safe on NULL).
 */

#ifndef RFKIT_H
#define RFKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RF_API __declspec(dllexport)
#else
#define RF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum rf_status {
    RF_OK = 0,
    RF_ERR_INVALID_ARGUMENT = 1, /* bad parameters, dimension mismatch */
    RF_ERR_DATA = 2,             /* parse errors, non-finite values, I/O */
    RF_ERR_NUMERIC = 3,          /* factorization failure */
    RF_ERR_INTERNAL = 4
};

enum rf_task { RF_TASK_REGRESSION = 0, RF_TASK_CLASSIFICATION = 1 };

typedef struct rf_matrix rf_matrix;
typedef struct rf_dataset rf_dataset;
typedef struct rf_kernel rf_kernel;
typedef struct rf_feature_map rf_feature_map;
typedef struct rf_model rf_model;
typedef struct rf_cv_report rf_cv_report;

RF_API const char* rf_version(void);

/* Message for the most recent failure on this thread; empty if none. */
RF_API const char* rf_last_error(void);

/* ---- matrices ---------------------------------------------------------- */

/* row_major may be NULL to create a zero matrix. */
RF_API int rf_matrix_create(int64_t rows, int64_t cols, const double* row_major,
                            rf_matrix** out);
RF_API int64_t rf_matrix_rows(const rf_matrix* m);
RF_API int64_t rf_matrix_cols(const rf_matrix* m);
/* Copies into a caller buffer of rows*cols doubles, row-major. */
RF_API int rf_matrix_get(const rf_matrix* m, double* row_major_out);
RF_API int rf_matrix_load_csv(const char* path, int has_header, rf_matrix** out);
RF_API int rf_matrix_save_csv(const rf_matrix* m, const char* path);
RF_API void rf_matrix_free(rf_matrix* m);

/* ---- datasets ---------------------------------------------------------- */

RF_API int rf_dataset_create(const rf_matrix* inputs, const rf_matrix* targets,
                             int task, rf_dataset** out);
/* target_selector: "last", "last:K", or comma-separated 0-based indices. */
RF_API int rf_dataset_load_csv(const char* path, const char* target_selector,
                               int task, int has_header, int remap01,
                               rf_dataset** out);
/* kind: "sincnd" | "sumsines" | "xorblobs" | "linearnoise" */
RF_API int rf_dataset_generate(const char* kind, int64_t n, int64_t d,
                               double noise_std, uint64_t seed, rf_dataset** out);
RF_API int rf_dataset_save_csv(const rf_dataset* ds, const char* path, int header);
RF_API int64_t rf_dataset_rows(const rf_dataset* ds);
RF_API int64_t rf_dataset_input_dim(const rf_dataset* ds);
RF_API int64_t rf_dataset_target_dim(const rf_dataset* ds);
RF_API int rf_dataset_task(const rf_dataset* ds);
RF_API int rf_dataset_inputs(const rf_dataset* ds, rf_matrix** out);
RF_API int rf_dataset_targets(const rf_dataset* ds, rf_matrix** out);
RF_API int rf_dataset_slice(const rf_dataset* ds, int64_t begin, int64_t count,
                            rf_dataset** out);
/* Per-dimension range of the inputs as the fit standardizer will present them
 * to a feature map; lo/hi are caller buffers of input_dim doubles. */
RF_API int rf_dataset_standardized_input_range(const rf_dataset* ds, int standardize,
                                               int scale_inputs, double* lo, double* hi);
/* The inputs as the fit standardizer will present them to a kernel. */
RF_API int rf_dataset_standardized_inputs(const rf_dataset* ds, int standardize,
                                          int scale_inputs, rf_matrix** out);
RF_API void rf_dataset_free(rf_dataset* ds);

/* ---- exact kernels ----------------------------------------------------- */

RF_API int rf_kernel_linear(rf_kernel** out);
RF_API int rf_kernel_polynomial(double a, double b, int degree, rf_kernel** out);
RF_API int rf_kernel_rbf(double sigma, rf_kernel** out);
RF_API int rf_kernel_laplacian(double sigma, rf_kernel** out);
RF_API int rf_kernel_stump_l1(double a, const double* box_lo, const double* box_hi,
                              int64_t dim, rf_kernel** out);
RF_API int rf_kernel_eval(const rf_kernel* k, const double* x, const double* y,
                          int64_t dim, double* out);
RF_API int rf_kernel_gram(const rf_kernel* k, const rf_matrix* x1, const rf_matrix* x2,
                          rf_matrix** out);
RF_API void rf_kernel_free(rf_kernel* k);

/* ---- random feature maps ----------------------------------------------- */

/* family: "fourier" | "squarewave" | "walsh" | "stump" | "binning".
 * param is sigma (fourier/squarewave/walsh/binning) or a (stump).
 * box_lo/box_hi (box_dim doubles) are required for stump and binning and
 * must be NULL otherwise. */
RF_API int rf_feature_map_sample(const char* family, double param,
                                 const double* box_lo, const double* box_hi,
                                 int64_t box_dim, int64_t n_features,
                                 uint64_t seed, uint64_t stream, int64_t input_dim,
                                 rf_feature_map** out);
RF_API int64_t rf_feature_map_output_dim(const rf_feature_map* f);
/* Applies the map; binning allocates columns for newly seen cells. */
RF_API int rf_feature_map_transform(rf_feature_map* f, const rf_matrix* x,
                                    rf_matrix** out);
/* Applies without mutating; unseen binning cells contribute nothing. */
RF_API int rf_feature_map_transform_frozen(const rf_feature_map* f, const rf_matrix* x,
                                           rf_matrix** out);
/* transform(x1) * transform(x2)' with shared binning table state. */
RF_API int rf_feature_map_approx_gram(rf_feature_map* f, const rf_matrix* x1,
                                      const rf_matrix* x2, rf_matrix** out);
/* Exact kernel the map converges to; *out is NULL when none is claimed
 * (squarewave, walsh). */
RF_API int rf_feature_map_target_kernel(const rf_feature_map* f, rf_kernel** out);
RF_API int rf_feature_map_save(const rf_feature_map* f, const char* path);
RF_API int rf_feature_map_load(const char* path, rf_feature_map** out);
RF_API void rf_feature_map_free(rf_feature_map* f);

/* ---- solvers ------------------------------------------------------------ */

typedef struct rf_fit_options {
    double lambda;     /* ridge strength, >= 0 */
    int standardize;   /* center inputs and targets, scale inputs */
    int scale_inputs;  /* 0: center without variance scaling */
} rf_fit_options;

RF_API void rf_fit_options_init(rf_fit_options* opts);

RF_API int rf_fit_lr(const rf_dataset* ds, const rf_fit_options* opts, rf_model** out);
RF_API int rf_fit_krr(const rf_dataset* ds, const rf_kernel* k,
                      const rf_fit_options* opts, rf_model** out);
/* Grows the given map in place (binning) and stores a frozen copy. */
RF_API int rf_fit_rks(const rf_dataset* ds, rf_feature_map* f,
                      const rf_fit_options* opts, rf_model** out);

RF_API int rf_model_predict(const rf_model* m, const rf_matrix* x, rf_matrix** out);
/* n x 1 matrix of -1/+1 labels; classification models only. */
RF_API int rf_model_predict_class(const rf_model* m, const rf_matrix* x, rf_matrix** out);
RF_API int rf_model_task(const rf_model* m);
RF_API int64_t rf_model_bytes(const rf_model* m);
RF_API int rf_model_save(const rf_model* m, const char* path);
RF_API int rf_model_load(const char* path, rf_model** out);
RF_API void rf_model_free(rf_model* m);

/* ---- cross-validation --------------------------------------------------- */

/* method: "lr" | "krr" | "rks".
 * family: kernel family for krr ("linear" | "rbf" | "laplacian"), feature
 * family for rks; ignored for lr (may be NULL).
 * params carries sigma or a values; feature_counts is required for rks.
 * metric: "rmse" | "accuracy". */
RF_API int rf_cross_validate(const rf_dataset* ds, const char* method,
                             const char* family, const double* lambdas,
                             int64_t n_lambdas, const double* params,
                             int64_t n_params, const int64_t* feature_counts,
                             int64_t n_feature_counts, int64_t folds,
                             const char* metric, uint64_t seed, uint64_t stream,
                             int standardize, int scale_inputs,
                             rf_cv_report** out);
RF_API int64_t rf_cv_report_size(const rf_cv_report* r);
RF_API int64_t rf_cv_report_selected(const rf_cv_report* r);
RF_API int rf_cv_report_row(const rf_cv_report* r, int64_t i, double* lambda,
                            double* param, int64_t* n_features, double* mean_score,
                            double* std_score, double* mean_fit_seconds,
                            int64_t* degenerate_folds);
/* Fold id per training sample; out must hold rf_cv_report_fold_count entries. */
RF_API int64_t rf_cv_report_fold_count(const rf_cv_report* r);
RF_API int rf_cv_report_folds(const rf_cv_report* r, int64_t* out);
RF_API void rf_cv_report_free(rf_cv_report* r);

#ifdef __cplusplus
}
#endif

#endif /* RFKIT_H */
