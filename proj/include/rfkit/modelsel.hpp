#pragma once

#include <string>
#include <vector>

#include "rfkit/dataset.hpp"
#include "rfkit/features.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/rng.hpp"
#include "rfkit/solvers.hpp"

namespace rfkit {

enum class Metric { RMSE, Accuracy };
enum class Method { LR, KRR, RKS };

/// k-fold grid search over (lambda, kernel parameter, feature count).
/// kernel_params carries sigma (RBF/Laplacian/Fourier/SquareWave/Walsh/
/// Binning) or a (Stump); it is ignored for LR and the Linear kernel.
/// feature_counts is required for RKS only.
struct GridSpec {
    std::vector<double> lambdas;  // sorted ascending, entries >= 0
    std::vector<double> kernel_params;
    std::vector<Index> feature_counts;
    int folds = 5;
    Metric metric = Metric::RMSE;
    RngStream rng{0, 0};

    KernelFamily kernel_family = KernelFamily::RBF;       // KRR
    FeatureFamily feature_family = FeatureFamily::Fourier;  // RKS
    FitOptions fit;  // lambda is overridden per configuration
};

struct CvConfig {
    double lambda = 0.0;
    double param = 0.0;     // sigma or a; 0 when unused
    Index n_features = 0;   // 0 for LR/KRR
    double mean_score = 0.0;
    double std_score = 0.0;
    double mean_fit_seconds = 0.0;
    int degenerate_folds = 0;  // classification folds with a single class
};

struct CvReport {
    std::vector<CvConfig> configs;     // grid order: lambda x param x D
    std::size_t selected = 0;
    std::vector<int> fold_assignment;  // n entries, fold id per sample
    Metric metric = Metric::RMSE;
};

/// Deterministic shuffled partition into k near-equal folds
/// (sizes floor(n/k) or ceil(n/k)).
std::vector<int> kfold_split(Index n, int k, const RngStream& rng);

/// Fit one grid configuration on the given training rows only; the building
/// block cross_validate applies per fold. Stump/Binning boxes are derived
/// from the standardized training rows. map_rng seeds the RKS draw.
FitModel cv_fit_config(const Dataset& data, Method method, const GridSpec& grid,
                       double lambda, double param, Index n_features,
                       const std::vector<Index>& train_rows, const RngStream& map_rng);

/// Fits each configuration on k-1 folds and scores the held-out fold;
/// standardization is fit inside each training fold only. RKS maps are
/// resampled per fold from substreams of grid.rng, so CV scores include
/// randomization variance. Selection minimizes mean RMSE (or maximizes mean
/// accuracy); ties prefer larger lambda, then smaller D, then smaller
/// parameter.
CvReport cross_validate(const Dataset& data, Method method, const GridSpec& grid);

Metric metric_from_name(const std::string& name);
Method method_from_name(const std::string& name);

}  // namespace rfkit
