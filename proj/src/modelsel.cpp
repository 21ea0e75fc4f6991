#include "rfkit/modelsel.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

namespace rfkit {

std::vector<int> kfold_split(Index n, int k, const RngStream& rng) {
    if (k < 2) throw InvalidArgument("kfold_split: k must be >= 2");
    if (static_cast<Index>(k) > n) {
        throw InvalidArgument("kfold_split: k = " + std::to_string(k) + " exceeds n = " +
                              std::to_string(n));
    }
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    // Fisher-Yates with counter-based draws
    for (Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Index>(rng.uniform_index(
            static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    std::vector<int> fold(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p) {
        fold[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])] =
            static_cast<int>(p % k);
    }
    return fold;
}

namespace {

struct ConfigKey {
    double lambda;
    double param;
    Index n_features;
};

bool needs_param(Method method, const GridSpec& grid) {
    if (method == Method::LR) return false;
    if (method == Method::KRR) return grid.kernel_family != KernelFamily::Linear;
    return true;
}

std::vector<ConfigKey> enumerate_configs(Method method, const GridSpec& grid) {
    if (grid.lambdas.empty()) throw InvalidArgument("grid: lambdas must be non-empty");
    for (std::size_t i = 0; i < grid.lambdas.size(); ++i) {
        if (grid.lambdas[i] < 0.0) throw InvalidArgument("grid: lambdas must be >= 0");
        if (i > 0 && grid.lambdas[i] < grid.lambdas[i - 1]) {
            throw InvalidArgument("grid: lambdas must be sorted ascending");
        }
    }
    std::vector<double> params{0.0};
    if (needs_param(method, grid)) {
        if (grid.kernel_params.empty()) {
            throw InvalidArgument("grid: kernel_params must be non-empty for this method");
        }
        for (double p : grid.kernel_params) {
            if (!(p > 0.0)) throw InvalidArgument("grid: kernel_params must be > 0");
        }
        params = grid.kernel_params;
    }
    std::vector<Index> counts{0};
    if (method == Method::RKS) {
        if (grid.feature_counts.empty()) {
            throw InvalidArgument("grid: feature_counts required for RKS");
        }
        for (Index d : grid.feature_counts) {
            if (d < 1) throw InvalidArgument("grid: feature_counts must be >= 1");
        }
        counts = grid.feature_counts;
    }
    std::vector<ConfigKey> configs;
    for (double l : grid.lambdas) {
        for (double p : params) {
            for (Index d : counts) configs.push_back({l, p, d});
        }
    }
    return configs;
}

// Per-dimension range of the standardized training block, widened when a
// column is constant so the box stays valid.
void standardized_box(const Matrix& xtr, const Matrix& ytr, const FitOptions& opts,
                      Vector& lo, Vector& hi) {
    const Standardizer s = opts.standardize
                               ? standardize_fit(xtr, ytr, opts.scale_inputs)
                               : Standardizer::identity(xtr.cols(), ytr.cols());
    const Matrix xs = s.apply_inputs(xtr);
    lo = xs.colwise().minCoeff();
    hi = xs.colwise().maxCoeff();
    for (Index j = 0; j < lo.size(); ++j) {
        if (!(lo(j) < hi(j))) {
            lo(j) -= 0.5;
            hi(j) += 0.5;
        }
    }
}

double score_fold(const FitModel& model, const Matrix& xte, const Matrix& yte,
                  Metric metric) {
    if (metric == Metric::Accuracy) {
        const Eigen::VectorXi labels = predict_class(model, xte);
        Index correct = 0;
        for (Index i = 0; i < labels.size(); ++i) {
            if (static_cast<double>(labels(i)) == yte(i, 0)) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(labels.size());
    }
    const Matrix pred = predict(model, xte);
    return std::sqrt((pred - yte).squaredNorm() /
                     static_cast<double>(yte.rows() * yte.cols()));
}

bool single_class(const Matrix& y) {
    for (Index i = 1; i < y.rows(); ++i) {
        if (y(i, 0) != y(0, 0)) return false;
    }
    return y.rows() > 0;
}

// is lhs a strictly better pick than rhs
bool better_config(const CvConfig& lhs, const CvConfig& rhs, Metric metric) {
    if (lhs.mean_score != rhs.mean_score) {
        return metric == Metric::Accuracy ? lhs.mean_score > rhs.mean_score
                                          : lhs.mean_score < rhs.mean_score;
    }
    // ties: prefer the most regularized, cheapest model
    if (lhs.lambda != rhs.lambda) return lhs.lambda > rhs.lambda;
    if (lhs.n_features != rhs.n_features) return lhs.n_features < rhs.n_features;
    return lhs.param < rhs.param;
}

}  // namespace

FitModel cv_fit_config(const Dataset& data, Method method, const GridSpec& grid,
                       double lambda, double param, Index n_features,
                       const std::vector<Index>& train_rows, const RngStream& map_rng) {
    const Matrix xtr = take_rows(data.inputs, train_rows);
    const Matrix ytr = take_rows(data.targets, train_rows);
    FitOptions opts = grid.fit;
    opts.lambda = lambda;

    switch (method) {
        case Method::LR:
            return fit_lr(xtr, ytr, opts, data.task);
        case Method::KRR: {
            KernelSpec kernel;
            switch (grid.kernel_family) {
                case KernelFamily::Linear:
                    kernel = KernelSpec::linear();
                    break;
                case KernelFamily::RBF:
                    kernel = KernelSpec::rbf(param);
                    break;
                case KernelFamily::Laplacian:
                    kernel = KernelSpec::laplacian(param);
                    break;
                default:
                    throw InvalidArgument(
                        "cross_validate: KRR supports linear, rbf and laplacian kernels");
            }
            return fit_krr(xtr, ytr, kernel, opts, data.task);
        }
        case Method::RKS: {
            FeatureMapSpec spec;
            switch (grid.feature_family) {
                case FeatureFamily::Fourier:
                    spec = FeatureMapSpec::fourier(param, n_features, map_rng);
                    break;
                case FeatureFamily::SquareWave:
                    spec = FeatureMapSpec::squarewave(param, n_features, map_rng);
                    break;
                case FeatureFamily::Walsh:
                    spec = FeatureMapSpec::walsh(param, n_features, map_rng);
                    break;
                case FeatureFamily::Stump: {
                    Vector lo, hi;
                    standardized_box(xtr, ytr, opts, lo, hi);
                    spec = FeatureMapSpec::stump(param, lo, hi, n_features, map_rng);
                    break;
                }
                case FeatureFamily::Binning: {
                    Vector lo, hi;
                    standardized_box(xtr, ytr, opts, lo, hi);
                    spec = FeatureMapSpec::binning(param, lo, hi, n_features, map_rng);
                    break;
                }
            }
            FittedFeatureMap map = sample_map(spec, xtr.cols());
            return fit_rks(xtr, ytr, map, opts, data.task);
        }
    }
    throw InvalidArgument("cross_validate: unknown method");
}

CvReport cross_validate(const Dataset& data, Method method, const GridSpec& grid) {
    const Index n = data.n_samples();
    if (grid.folds < 2) throw InvalidArgument("grid: folds must be >= 2");
    if (static_cast<Index>(grid.folds) > n) {
        throw InvalidArgument("grid: more folds than samples");
    }
    if (grid.metric == Metric::Accuracy && data.task != Task::BinaryClassification) {
        throw InvalidArgument("grid: accuracy metric needs a classification dataset");
    }
    const auto configs = enumerate_configs(method, grid);
    const auto fold_of = kfold_split(n, grid.folds, grid.rng.substream(0));

    // Pre-split row indices per fold.
    std::vector<std::vector<Index>> train_rows(static_cast<std::size_t>(grid.folds));
    std::vector<std::vector<Index>> test_rows(static_cast<std::size_t>(grid.folds));
    for (Index i = 0; i < n; ++i) {
        const auto f = static_cast<std::size_t>(fold_of[static_cast<std::size_t>(i)]);
        for (std::size_t g = 0; g < train_rows.size(); ++g) {
            (g == f ? test_rows[g] : train_rows[g]).push_back(i);
        }
    }

    CvReport report;
    report.metric = grid.metric;
    report.fold_assignment = fold_of;
    report.configs.reserve(configs.size());

    for (const auto& key : configs) {
        CvConfig result;
        result.lambda = key.lambda;
        result.param = key.param;
        result.n_features = key.n_features;

        std::vector<double> scores(static_cast<std::size_t>(grid.folds));
        double fit_seconds = 0.0;
        for (int f = 0; f < grid.folds; ++f) {
            const auto& tr = train_rows[static_cast<std::size_t>(f)];
            const auto& te = test_rows[static_cast<std::size_t>(f)];
            // fresh map stream per fold so CV scores carry randomization
            // variance; substream 0 is the shuffle
            const RngStream fold_rng = grid.rng.substream(1 + static_cast<std::uint64_t>(f));

            const auto t0 = std::chrono::steady_clock::now();
            const FitModel model = cv_fit_config(data, method, grid, key.lambda, key.param,
                                                 key.n_features, tr, fold_rng);
            const auto t1 = std::chrono::steady_clock::now();
            fit_seconds += std::chrono::duration<double>(t1 - t0).count();

            const Matrix xte = take_rows(data.inputs, te);
            const Matrix yte = take_rows(data.targets, te);
            scores[static_cast<std::size_t>(f)] = score_fold(model, xte, yte, grid.metric);

            if (data.task == Task::BinaryClassification) {
                const Matrix ytr = take_rows(data.targets, tr);
                if (single_class(ytr) || single_class(yte)) ++result.degenerate_folds;
            }
        }
        const double k = static_cast<double>(grid.folds);
        result.mean_score = std::accumulate(scores.begin(), scores.end(), 0.0) / k;
        double var = 0.0;
        for (double s : scores) var += (s - result.mean_score) * (s - result.mean_score);
        result.std_score = std::sqrt(var / k);
        result.mean_fit_seconds = fit_seconds / k;
        report.configs.push_back(result);
    }

    report.selected = 0;
    for (std::size_t i = 1; i < report.configs.size(); ++i) {
        if (better_config(report.configs[i], report.configs[report.selected], grid.metric)) {
            report.selected = i;
        }
    }
    return report;
}

Metric metric_from_name(const std::string& name) {
    if (name == "rmse") return Metric::RMSE;
    if (name == "accuracy") return Metric::Accuracy;
    throw InvalidArgument("unknown metric: " + name);
}

Method method_from_name(const std::string& name) {
    if (name == "lr") return Method::LR;
    if (name == "krr") return Method::KRR;
    if (name == "rks") return Method::RKS;
    throw InvalidArgument("unknown method: " + name);
}

}  // namespace rfkit
