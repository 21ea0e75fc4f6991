#pragma once

#include <cstddef>
#include <optional>

#include "rfkit/features.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/standardize.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

struct SolveOptions {
    double jitter_start = 1e-10;
    double jitter_max = 1e-4;
    double sym_tol = 1e-8;
};

struct SpdSolution {
    Matrix x;
    double jitter = 0.0;  // smallest ladder value that factorized
};

/// Solve A X = B for symmetric positive (semi)definite A by Cholesky with a
/// jitter escalation ladder {0, jitter_start, 10 jitter_start, ...,
/// jitter_max}. The accepted solution satisfies
/// |(A + jitter I) X - B|_F <= 1e-8 |B|_F. Throws InvalidArgument for
/// asymmetric input, NumericError when the ladder is exhausted.
SpdSolution solve_spd(const Matrix& a, const Matrix& b, const SolveOptions& opts = {});

/// Dual ridge weights: solves (K + lambda I) L = Y. K must be a symmetric
/// Gram matrix.
Matrix solve_dual(const Matrix& k, const Matrix& y, double lambda,
                  const SolveOptions& opts = {});

struct FitOptions {
    double lambda = 0.0;
    bool standardize = true;   // center inputs and targets, scale inputs
    bool scale_inputs = true;  // set false to center without variance scaling
    SolveOptions solve;
};

/// A trained least-squares predictor.
///  - Primal: explicit weights over inputs (linear ridge) or over random
///    features (feature_map set); prediction z(x)'W.
///  - Dual: per-sample weights plus stored training inputs and the exact
///    kernel; prediction K(x, X_train) L.
/// Inputs are standardized on the way in and target means added back on the
/// way out, using the stored standardizer. Immutable after fit.
struct FitModel {
    enum class Kind { Primal, Dual };

    Kind kind = Kind::Primal;
    Task task = Task::Regression;
    double lambda = 0.0;
    Standardizer standardizer;

    // Primal
    Matrix weights;  // (d | D | 2D) x o
    std::optional<FittedFeatureMap> feature_map;

    // Dual
    Matrix dual_weights;  // n x o
    Matrix train_inputs;  // n x d, standardized
    std::optional<KernelSpec> kernel;

    Index output_dim() const;
};

/// Linear ridge: W = (X'X + lambda I)^-1 X'Y on standardized data.
FitModel fit_lr(const Matrix& x, const Matrix& y, const FitOptions& opts,
                Task task = Task::Regression);

/// Kernel ridge / least-squares SVM: L = (K + lambda I)^-1 Y with
/// K = gram(kernel, X, X).
FitModel fit_krr(const Matrix& x, const Matrix& y, const KernelSpec& kernel,
                 const FitOptions& opts, Task task = Task::Regression);

/// Random-feature primal ridge: W = (Z'Z + lambda I)^-1 Z'Y with
/// Z = transform(map, X). Only the D x D system is formed. The map is grown
/// in place (Binning) and a frozen copy is stored in the model.
FitModel fit_rks(const Matrix& x, const Matrix& y, FittedFeatureMap& map,
                 const FitOptions& opts, Task task = Task::Regression);

/// De-standardized predictions, one row per row of x_star.
Matrix predict(const FitModel& model, const Matrix& x_star);

/// Sign readout for binary classification; sign(0) := +1.
Eigen::VectorXi predict_class(const FitModel& model, const Matrix& x_star);

/// Bytes held by the model for prediction (weights, stored inputs, map
/// parameters, standardizer).
std::size_t model_bytes(const FitModel& model);

}  // namespace rfkit
