#include "rfkit/solvers.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

namespace rfkit {

namespace {

// Z'Z with only one triangle computed, mirrored so the result is exactly
// symmetric.
Matrix crossprod(const Matrix& z) {
    Matrix g = Matrix::Zero(z.cols(), z.cols());
    g.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
    g = g.selfadjointView<Eigen::Lower>();
    return g;
}

void check_fit_inputs(const Matrix& x, const Matrix& y, const FitOptions& opts, Task task) {
    if (x.rows() == 0) throw InvalidArgument("fit: empty training set");
    if (x.rows() != y.rows()) {
        throw InvalidArgument("fit: X has " + std::to_string(x.rows()) +
                              " rows, Y has " + std::to_string(y.rows()));
    }
    if (opts.lambda < 0.0) throw InvalidArgument("fit: lambda must be >= 0");
    if (task == Task::BinaryClassification && y.cols() != 1) {
        throw InvalidArgument("fit: classification expects a single target column");
    }
}

Standardizer make_standardizer(const Matrix& x, const Matrix& y, const FitOptions& opts) {
    if (!opts.standardize) {
        require_finite(x, "fit: X");
        require_finite(y, "fit: Y");
        return Standardizer::identity(x.cols(), y.cols());
    }
    return standardize_fit(x, y, opts.scale_inputs);
}

}  // namespace

SpdSolution solve_spd(const Matrix& a, const Matrix& b, const SolveOptions& opts) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("solve_spd: matrix is " + shape_str(a) + ", expected square");
    }
    if (b.rows() != a.rows()) {
        throw InvalidArgument("solve_spd: right-hand side has " + std::to_string(b.rows()) +
                              " rows, expected " + std::to_string(a.rows()));
    }
    if (!(opts.jitter_start > 0.0) || opts.jitter_start > opts.jitter_max) {
        throw InvalidArgument("solve_spd: need 0 < jitter_start <= jitter_max");
    }
    if (a.rows() == 0) return {Matrix(0, b.cols()), 0.0};

    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > opts.sym_tol * scale) {
        throw InvalidArgument("solve_spd: matrix is not symmetric (max asymmetry " +
                              std::to_string(asym) + ")");
    }

    const double b_norm = b.norm();
    double jitter = 0.0;
    while (true) {
        Matrix aj = a;
        if (jitter > 0.0) aj.diagonal().array() += jitter;
        Eigen::LLT<Matrix> llt(aj);
        if (llt.info() == Eigen::Success) {
            Matrix x = llt.solve(b);
            const double resid = (aj * x - b).norm();
            if (b_norm == 0.0 || resid <= 1e-8 * b_norm) {
                return {std::move(x), jitter};
            }
        }
        if (jitter >= opts.jitter_max) break;
        jitter = jitter == 0.0 ? opts.jitter_start : std::min(jitter * 10.0, opts.jitter_max);
    }
    throw NumericError("solve_spd: factorization failed with jitter up to " +
                       std::to_string(opts.jitter_max));
}

Matrix solve_dual(const Matrix& k, const Matrix& y, double lambda, const SolveOptions& opts) {
    if (lambda < 0.0) throw InvalidArgument("solve_dual: lambda must be >= 0");
    Matrix kk = k;
    kk.diagonal().array() += lambda;
    return solve_spd(kk, y, opts).x;
}

Index FitModel::output_dim() const {
    return kind == Kind::Primal ? weights.cols() : dual_weights.cols();
}

FitModel fit_lr(const Matrix& x, const Matrix& y, const FitOptions& opts, Task task) {
    check_fit_inputs(x, y, opts, task);
    FitModel m;
    m.kind = FitModel::Kind::Primal;
    m.task = task;
    m.lambda = opts.lambda;
    m.standardizer = make_standardizer(x, y, opts);
    const Matrix xs = m.standardizer.apply_inputs(x);
    const Matrix ys = m.standardizer.apply_targets(y);
    Matrix g = crossprod(xs);
    g.diagonal().array() += opts.lambda;
    m.weights = solve_spd(g, xs.transpose() * ys, opts.solve).x;
    return m;
}

FitModel fit_krr(const Matrix& x, const Matrix& y, const KernelSpec& kernel,
                 const FitOptions& opts, Task task) {
    check_fit_inputs(x, y, opts, task);
    kernel.validate();
    FitModel m;
    m.kind = FitModel::Kind::Dual;
    m.task = task;
    m.lambda = opts.lambda;
    m.standardizer = make_standardizer(x, y, opts);
    m.train_inputs = m.standardizer.apply_inputs(x);
    const Matrix ys = m.standardizer.apply_targets(y);
    const Matrix k = gram(kernel, m.train_inputs, m.train_inputs);
    m.dual_weights = solve_dual(k, ys, opts.lambda, opts.solve);
    m.kernel = kernel;
    return m;
}

FitModel fit_rks(const Matrix& x, const Matrix& y, FittedFeatureMap& map,
                 const FitOptions& opts, Task task) {
    check_fit_inputs(x, y, opts, task);
    if (map.input_dim != x.cols()) {
        throw InvalidArgument("fit_rks: map expects " + std::to_string(map.input_dim) +
                              " input columns, data has " + std::to_string(x.cols()));
    }
    FitModel m;
    m.kind = FitModel::Kind::Primal;
    m.task = task;
    m.lambda = opts.lambda;
    m.standardizer = make_standardizer(x, y, opts);
    const Matrix xs = m.standardizer.apply_inputs(x);
    const Matrix ys = m.standardizer.apply_targets(y);
    const Matrix z = transform(map, xs);
    // Only the D x D (or 2D x 2D) system is ever formed.
    Matrix g = crossprod(z);
    g.diagonal().array() += opts.lambda;
    m.weights = solve_spd(g, z.transpose() * ys, opts.solve).x;
    m.feature_map = map;  // frozen copy, including any grown binning tables
    return m;
}

Matrix predict(const FitModel& model, const Matrix& x_star) {
    if (x_star.cols() != model.standardizer.input_dim()) {
        throw InvalidArgument("predict: input has " + std::to_string(x_star.cols()) +
                              " columns, model expects " +
                              std::to_string(model.standardizer.input_dim()));
    }
    require_finite(x_star, "predict: inputs");
    const Matrix xs = model.standardizer.apply_inputs(x_star);
    Matrix ys;
    if (model.kind == FitModel::Kind::Primal) {
        if (model.feature_map) {
            const Matrix z = transform_frozen(*model.feature_map, xs);
            ys = z * model.weights;
        } else {
            ys = xs * model.weights;
        }
    } else {
        const Matrix k_star = gram(*model.kernel, xs, model.train_inputs);
        ys = k_star * model.dual_weights;
    }
    return model.standardizer.invert_targets(ys);
}

Eigen::VectorXi predict_class(const FitModel& model, const Matrix& x_star) {
    if (model.task != Task::BinaryClassification) {
        throw InvalidArgument("predict_class: model was fit for regression");
    }
    const Matrix p = predict(model, x_star);
    Eigen::VectorXi labels(p.rows());
    for (Index i = 0; i < p.rows(); ++i) {
        labels(i) = p(i, 0) >= 0.0 ? 1 : -1;  // sign(0) := +1
    }
    return labels;
}

std::size_t model_bytes(const FitModel& model) {
    auto mat = [](const Matrix& m) { return sizeof(double) * static_cast<std::size_t>(m.size()); };
    auto vec = [](const Vector& v) { return sizeof(double) * static_cast<std::size_t>(v.size()); };

    std::size_t bytes = vec(model.standardizer.input_means) +
                        vec(model.standardizer.input_scales) +
                        vec(model.standardizer.target_means);
    bytes += mat(model.weights) + mat(model.dual_weights) + mat(model.train_inputs);
    if (model.feature_map) {
        const auto& fm = *model.feature_map;
        bytes += mat(fm.omegas) + vec(fm.phases) + mat(fm.bin_pitches) + mat(fm.bin_offsets);
        bytes += sizeof(Index) * fm.stump_dims.size();
        for (const auto& table : fm.bin_tables) {
            bytes += table.size() *
                     (sizeof(Index) + sizeof(std::int64_t) * static_cast<std::size_t>(fm.input_dim));
        }
    }
    return bytes;
}

}  // namespace rfkit
