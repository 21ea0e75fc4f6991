#pragma once

#include "rfkit/rng.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

struct Dataset {
    Matrix inputs;   // n x d
    Matrix targets;  // n x o
    Task task = Task::Regression;

    Index n_samples() const { return inputs.rows(); }
    Index input_dim() const { return inputs.cols(); }
    Index target_dim() const { return targets.cols(); }

    /// Validates row agreement and, for classification, {-1,+1} single-column
    /// targets. Entries must be finite.
    static Dataset make(Matrix inputs, Matrix targets, Task task);

    /// Contiguous row slice [begin, begin+count).
    Dataset slice(Index begin, Index count) const;
};

enum class SyntheticKind { SincND, SumSines, XorBlobs, LinearNoise };

/// Mean response of a synthetic generator at a given input point (noise-free).
/// For XorBlobs this is the label of the nearest blob center sign pattern.
double synthetic_mean(SyntheticKind kind, const Vector& x);

/// Deterministic synthetic datasets:
///   SincND:      x ~ U[-2,2]^d, y = sin(3r)/(3r) with r = |x|_2, plus noise.
///   SumSines:    x ~ U[-2,2]^d, y = sum_m sin(3 x_m), plus noise.
///   XorBlobs:    d >= 2; blob centers (s1, s2) in {-1,+1}^2 jittered by
///                N(0, noise_std^2); label = s1*s2; extra dims are N(0,1).
///   LinearNoise: x ~ N(0,1)^d, y = x' w0 + noise with w0 drawn from the
///                stream's substream 0.
Dataset gen_synthetic(SyntheticKind kind, Index n, Index d, double noise_std,
                      const RngStream& rng);

SyntheticKind synthetic_kind_from_name(const std::string& name);

}  // namespace rfkit
