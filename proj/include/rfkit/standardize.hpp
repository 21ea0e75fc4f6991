#pragma once

#include "rfkit/types.hpp"

namespace rfkit {

/// Column-wise centering/scaling of inputs plus centering of targets.
/// Input scales use the population standard deviation (divide by n);
/// zero-variance columns fall back to scale 1.
struct Standardizer {
    Vector input_means;   // d
    Vector input_scales;  // d, strictly positive
    Vector target_means;  // o

    static Standardizer identity(Index d, Index o);

    Index input_dim() const { return input_means.size(); }
    Index target_dim() const { return target_means.size(); }

    Matrix apply_inputs(const Matrix& x) const;
    Matrix apply_targets(const Matrix& y) const;
    Matrix invert_inputs(const Matrix& xs) const;
    Matrix invert_targets(const Matrix& ys) const;
};

/// Fit means and scales on a training set. X and Y must be non-empty with the
/// same row count. With scale_inputs off, every input scale is 1.
Standardizer standardize_fit(const Matrix& x, const Matrix& y, bool scale_inputs = true);

}  // namespace rfkit
