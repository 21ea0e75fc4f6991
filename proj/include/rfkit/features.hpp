#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfkit/kernels.hpp"
#include "rfkit/rng.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

enum class FeatureFamily { Fourier, SquareWave, Walsh, Stump, Binning };

/// Recipe for sampling an explicit random feature map z(.) whose inner
/// products approximate a shift-invariant kernel:
///
///   Fourier     z_k(x) = sqrt(2/D) cos(w_k'x + b_k), w ~ N(0, 1/sigma^2)
///               -> RBF(sigma)
///   SquareWave  sign-quantized Fourier (square wave in place of the cosine)
///   Walsh       SquareWave with phases snapped to multiples of pi/2
///   Stump       per feature: random dimension m, threshold w uniform in the
///               box; paired channels (1, sign(x_m - w))/sqrt(2D)
///               -> 1 - |x-y|_1/a on the box (a = total box width)
///   Binning     D random axis-aligned grids, pitches Gamma(2, 1/(2 sigma^2)),
///               one indicator column per occupied cell, scaled 1/sqrt(D)
///               -> Laplacian(sigma)
struct FeatureMapSpec {
    FeatureFamily family = FeatureFamily::Fourier;
    double sigma = 1.0;      // Fourier, SquareWave, Walsh, Binning
    double a = 1.0;          // Stump
    Vector box_lo, box_hi;   // Stump, Binning
    Index n_features = 1;    // D
    RngStream rng{0, 0};

    static FeatureMapSpec fourier(double sigma, Index d_features, RngStream rng);
    static FeatureMapSpec squarewave(double sigma, Index d_features, RngStream rng);
    static FeatureMapSpec walsh(double sigma, Index d_features, RngStream rng);
    static FeatureMapSpec stump(double a, Vector box_lo, Vector box_hi,
                                Index d_features, RngStream rng);
    static FeatureMapSpec binning(double sigma, Vector box_lo, Vector box_hi,
                                  Index d_features, RngStream rng);

    void validate(Index input_dim) const;
    std::string family_name() const;
};

/// Sum of per-dimension box widths; makes the stump sign average match the
/// 1 - |x-y|_1/a kernel when the per-dimension widths are equal.
double stump_default_a(const Vector& box_lo, const Vector& box_hi);

/// A frozen random draw. Re-sampling the same spec reproduces the identical
/// map; Binning additionally accumulates a cell -> column table while
/// transforming, so train and test must share one instance (or a frozen copy).
struct FittedFeatureMap {
    FeatureMapSpec spec;
    Index input_dim = 0;

    Matrix omegas;                  // D x d frequencies; D x 1 stump thresholds
    Vector phases;                  // D, cosine families, in [0, 2pi)
    std::vector<Index> stump_dims;  // D, Stump only

    Matrix bin_pitches;   // D x d, Binning
    Matrix bin_offsets;   // D x d, in [0, pitch)
    std::vector<std::map<std::vector<std::int64_t>, Index>> bin_tables;

    Index out_cols = 0;  // current output width: D, 2D, or allocated bins

    Index output_dim() const { return out_cols; }
};

FittedFeatureMap sample_map(const FeatureMapSpec& spec, Index input_dim);

/// Apply the map row-wise; n x out_cols result. For Binning this allocates
/// columns for newly seen cells in first-seen order over row-major traversal
/// (single writer during the call).
Matrix transform(FittedFeatureMap& map, const Matrix& x);

/// Apply without mutating: unseen Binning cells contribute nothing. Safe to
/// call concurrently on a shared map.
Matrix transform_frozen(const FittedFeatureMap& map, const Matrix& x);

/// transform(x1) * transform(x2)' with shared Binning table state.
Matrix approx_gram(FittedFeatureMap& map, const Matrix& x1, const Matrix& x2);

/// The kernel this family's inner products converge to, if one is claimed.
/// SquareWave and Walsh return nullopt.
std::optional<KernelSpec> target_kernel(const FeatureMapSpec& spec);

FeatureFamily feature_family_from_name(const std::string& name);

}  // namespace rfkit
