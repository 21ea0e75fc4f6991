#include "rfkit/standardize.hpp"

#include <cmath>

namespace rfkit {

namespace {

void check_cols(Index got, Index want, const char* what) {
    if (got != want) {
        throw InvalidArgument(std::string(what) + ": expected " +
                              std::to_string(want) + " columns, got " +
                              std::to_string(got));
    }
}

}  // namespace

Standardizer Standardizer::identity(Index d, Index o) {
    Standardizer s;
    s.input_means = Vector::Zero(d);
    s.input_scales = Vector::Ones(d);
    s.target_means = Vector::Zero(o);
    return s;
}

Matrix Standardizer::apply_inputs(const Matrix& x) const {
    check_cols(x.cols(), input_dim(), "apply_inputs");
    return (x.rowwise() - input_means.transpose()).array().rowwise() /
           input_scales.transpose().array();
}

Matrix Standardizer::apply_targets(const Matrix& y) const {
    check_cols(y.cols(), target_dim(), "apply_targets");
    return y.rowwise() - target_means.transpose();
}

Matrix Standardizer::invert_inputs(const Matrix& xs) const {
    check_cols(xs.cols(), input_dim(), "invert_inputs");
    return (xs.array().rowwise() * input_scales.transpose().array()).matrix().rowwise() +
           input_means.transpose();
}

Matrix Standardizer::invert_targets(const Matrix& ys) const {
    check_cols(ys.cols(), target_dim(), "invert_targets");
    return ys.rowwise() + target_means.transpose();
}

Standardizer standardize_fit(const Matrix& x, const Matrix& y, bool scale_inputs) {
    if (x.rows() == 0 || y.rows() == 0) {
        throw InvalidArgument("standardize_fit: empty input");
    }
    if (x.rows() != y.rows()) {
        throw InvalidArgument("standardize_fit: X has " + std::to_string(x.rows()) +
                              " rows, Y has " + std::to_string(y.rows()));
    }
    require_finite(x, "standardize_fit: X");
    require_finite(y, "standardize_fit: Y");

    Standardizer s;
    s.input_means = x.colwise().mean();
    s.target_means = y.colwise().mean();
    s.input_scales = Vector::Ones(x.cols());
    if (scale_inputs) {
        const double n = static_cast<double>(x.rows());
        for (Index j = 0; j < x.cols(); ++j) {
            // population standard deviation; constant columns keep scale 1
            const double var =
                (x.col(j).array() - s.input_means(j)).square().sum() / n;
            const double sd = std::sqrt(var);
            s.input_scales(j) = sd > 0.0 ? sd : 1.0;
        }
    }
    return s;
}

}  // namespace rfkit
