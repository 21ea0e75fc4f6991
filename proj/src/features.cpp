#include "rfkit/features.hpp"

#include <cmath>
#include <numbers>

namespace rfkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_cosine_family(FeatureFamily f) {
    return f == FeatureFamily::Fourier || f == FeatureFamily::SquareWave ||
           f == FeatureFamily::Walsh;
}

void validate_box(const Vector& lo, const Vector& hi, const char* what) {
    if (lo.size() == 0 || lo.size() != hi.size()) {
        throw InvalidArgument(std::string(what) + ": box_lo/box_hi sizes disagree");
    }
    for (Index j = 0; j < lo.size(); ++j) {
        if (!(lo(j) < hi(j))) {
            throw InvalidArgument(std::string(what) +
                                  ": box_lo must be < box_hi componentwise");
        }
    }
}

}  // namespace

FeatureMapSpec FeatureMapSpec::fourier(double sigma, Index d_features, RngStream rng) {
    FeatureMapSpec s;
    s.family = FeatureFamily::Fourier;
    s.sigma = sigma;
    s.n_features = d_features;
    s.rng = rng;
    return s;
}

FeatureMapSpec FeatureMapSpec::squarewave(double sigma, Index d_features, RngStream rng) {
    FeatureMapSpec s = fourier(sigma, d_features, rng);
    s.family = FeatureFamily::SquareWave;
    return s;
}

FeatureMapSpec FeatureMapSpec::walsh(double sigma, Index d_features, RngStream rng) {
    FeatureMapSpec s = fourier(sigma, d_features, rng);
    s.family = FeatureFamily::Walsh;
    return s;
}

FeatureMapSpec FeatureMapSpec::stump(double a, Vector box_lo, Vector box_hi,
                                     Index d_features, RngStream rng) {
    FeatureMapSpec s;
    s.family = FeatureFamily::Stump;
    s.a = a;
    s.box_lo = std::move(box_lo);
    s.box_hi = std::move(box_hi);
    s.n_features = d_features;
    s.rng = rng;
    return s;
}

FeatureMapSpec FeatureMapSpec::binning(double sigma, Vector box_lo, Vector box_hi,
                                       Index d_features, RngStream rng) {
    FeatureMapSpec s;
    s.family = FeatureFamily::Binning;
    s.sigma = sigma;
    s.box_lo = std::move(box_lo);
    s.box_hi = std::move(box_hi);
    s.n_features = d_features;
    s.rng = rng;
    return s;
}

void FeatureMapSpec::validate(Index input_dim) const {
    if (n_features < 1) throw InvalidArgument("feature map: D must be >= 1");
    if (input_dim < 1) throw InvalidArgument("feature map: input dimension must be >= 1");
    switch (family) {
        case FeatureFamily::Fourier:
        case FeatureFamily::SquareWave:
        case FeatureFamily::Walsh:
            if (!(sigma > 0.0)) throw InvalidArgument(family_name() + ": sigma must be > 0");
            break;
        case FeatureFamily::Stump:
            if (!(a > 0.0)) throw InvalidArgument("stump: a must be > 0");
            validate_box(box_lo, box_hi, "stump");
            if (box_lo.size() != input_dim) {
                throw InvalidArgument("stump: box dimension does not match input dimension");
            }
            break;
        case FeatureFamily::Binning:
            if (!(sigma > 0.0)) throw InvalidArgument("binning: sigma must be > 0");
            validate_box(box_lo, box_hi, "binning");
            if (box_lo.size() != input_dim) {
                throw InvalidArgument("binning: box dimension does not match input dimension");
            }
            break;
    }
}

std::string FeatureMapSpec::family_name() const {
    switch (family) {
        case FeatureFamily::Fourier: return "fourier";
        case FeatureFamily::SquareWave: return "squarewave";
        case FeatureFamily::Walsh: return "walsh";
        case FeatureFamily::Stump: return "stump";
        case FeatureFamily::Binning: return "binning";
    }
    return "?";
}

double stump_default_a(const Vector& box_lo, const Vector& box_hi) {
    validate_box(box_lo, box_hi, "stump_default_a");
    return (box_hi - box_lo).sum();
}

FittedFeatureMap sample_map(const FeatureMapSpec& spec, Index input_dim) {
    spec.validate(input_dim);
    const Index d = input_dim;
    const Index n_feat = spec.n_features;

    FittedFeatureMap map;
    map.spec = spec;
    map.input_dim = d;

    switch (spec.family) {
        case FeatureFamily::Fourier:
        case FeatureFamily::SquareWave:
        case FeatureFamily::Walsh: {
            // Frequencies from the RBF spectral density N(0, 1/sigma^2).
            map.omegas = draw_gaussian(spec.rng.substream(0), n_feat, d, 1.0 / spec.sigma);
            map.phases = draw_uniform(spec.rng.substream(1), n_feat, 0.0, kTwoPi);
            if (spec.family == FeatureFamily::Walsh) {
                // Dyadic phases: snap to the nearest multiple of pi/2.
                const double q = std::numbers::pi / 2.0;
                for (Index k = 0; k < n_feat; ++k) {
                    double b = q * std::round(map.phases(k) / q);
                    if (b >= kTwoPi) b = 0.0;
                    map.phases(k) = b;
                }
            }
            map.out_cols = n_feat;
            break;
        }
        case FeatureFamily::Stump: {
            const RngStream rdim = spec.rng.substream(0);
            const RngStream rthr = spec.rng.substream(1);
            map.omegas.resize(n_feat, 1);
            map.stump_dims.resize(static_cast<std::size_t>(n_feat));
            for (Index k = 0; k < n_feat; ++k) {
                const auto ku = static_cast<std::uint64_t>(k);
                const Index m = static_cast<Index>(
                    rdim.uniform_index(ku, static_cast<std::uint64_t>(d)));
                map.stump_dims[static_cast<std::size_t>(k)] = m;
                map.omegas(k, 0) =
                    spec.box_lo(m) + (spec.box_hi(m) - spec.box_lo(m)) * rthr.uniform(ku);
            }
            map.out_cols = 2 * n_feat;
            break;
        }
        case FeatureFamily::Binning: {
            // Pitch ~ Gamma(shape 2, rate gamma) with gamma = 1/(2 sigma^2):
            // the per-dimension bin-collision frequency then averages to
            // exp(-gamma |x_j - y_j|).
            const double rate = 1.0 / (2.0 * spec.sigma * spec.sigma);
            const RngStream rpitch = spec.rng.substream(0);
            const RngStream roff = spec.rng.substream(1);
            map.bin_pitches.resize(n_feat, d);
            map.bin_offsets.resize(n_feat, d);
            for (Index g = 0; g < n_feat; ++g) {
                for (Index j = 0; j < d; ++j) {
                    const auto idx = static_cast<std::uint64_t>(g * d + j);
                    const double u1 = rpitch.uniform_open(2 * idx);
                    const double u2 = rpitch.uniform_open(2 * idx + 1);
                    const double pitch = -(std::log(u1) + std::log(u2)) / rate;
                    map.bin_pitches(g, j) = pitch;
                    map.bin_offsets(g, j) = pitch * roff.uniform(idx);
                }
            }
            map.bin_tables.assign(static_cast<std::size_t>(n_feat), {});
            map.out_cols = 0;
            break;
        }
    }
    return map;
}

namespace {

void check_transform_dims(const FittedFeatureMap& map, const Matrix& x) {
    if (x.cols() != map.input_dim) {
        throw InvalidArgument("transform: input has " + std::to_string(x.cols()) +
                              " columns, map expects " + std::to_string(map.input_dim));
    }
}

Matrix transform_cosine(const FittedFeatureMap& map, const Matrix& x) {
    const Index n_feat = map.spec.n_features;
    const double scale = std::sqrt(2.0 / static_cast<double>(n_feat));
    Matrix z = x * map.omegas.transpose();
    z.rowwise() += map.phases.transpose();
    if (map.spec.family == FeatureFamily::Fourier) {
        z = (scale * z.array().cos()).matrix();
    } else {
        // square wave: sign of the cosine, sign(0) := +1
        z = z.array()
                .cos()
                .unaryExpr([scale](double c) { return c >= 0.0 ? scale : -scale; })
                .matrix();
    }
    return z;
}

Matrix transform_stump(const FittedFeatureMap& map, const Matrix& x) {
    const Index n_feat = map.spec.n_features;
    const Index n = x.rows();
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n_feat));
    Matrix z(n, 2 * n_feat);
    for (Index k = 0; k < n_feat; ++k) {
        const Index m = map.stump_dims[static_cast<std::size_t>(k)];
        const double thr = map.omegas(k, 0);
        for (Index i = 0; i < n; ++i) {
            z(i, 2 * k) = scale;
            z(i, 2 * k + 1) = x(i, m) >= thr ? scale : -scale;
        }
    }
    return z;
}

std::vector<std::int64_t> bin_tuple(const FittedFeatureMap& map, const Matrix& x,
                                    Index row, Index grid) {
    std::vector<std::int64_t> cell(static_cast<std::size_t>(map.input_dim));
    for (Index j = 0; j < map.input_dim; ++j) {
        const double t = (x(row, j) - map.bin_offsets(grid, j)) / map.bin_pitches(grid, j);
        cell[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(std::floor(t));
    }
    return cell;
}

Matrix transform_binning(FittedFeatureMap* grow, const FittedFeatureMap& map,
                         const Matrix& x) {
    const Index n_feat = map.spec.n_features;
    const Index n = x.rows();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_feat));

    // Resolve every (row, grid) cell to a column first; new columns are
    // allocated in first-seen order over row-major traversal.
    std::vector<Index> cols(static_cast<std::size_t>(n * n_feat), -1);
    for (Index i = 0; i < n; ++i) {
        for (Index g = 0; g < n_feat; ++g) {
            const auto cell = bin_tuple(map, x, i, g);
            const auto& table = map.bin_tables[static_cast<std::size_t>(g)];
            const auto it = table.find(cell);
            Index col = -1;
            if (it != table.end()) {
                col = it->second;
            } else if (grow) {
                col = grow->out_cols++;
                grow->bin_tables[static_cast<std::size_t>(g)].emplace(cell, col);
            }
            cols[static_cast<std::size_t>(i * n_feat + g)] = col;
        }
    }

    Matrix z = Matrix::Zero(n, map.out_cols);
    for (Index i = 0; i < n; ++i) {
        for (Index g = 0; g < n_feat; ++g) {
            const Index c = cols[static_cast<std::size_t>(i * n_feat + g)];
            if (c >= 0) z(i, c) = scale;
        }
    }
    return z;
}

}  // namespace

Matrix transform(FittedFeatureMap& map, const Matrix& x) {
    check_transform_dims(map, x);
    switch (map.spec.family) {
        case FeatureFamily::Fourier:
        case FeatureFamily::SquareWave:
        case FeatureFamily::Walsh:
            return transform_cosine(map, x);
        case FeatureFamily::Stump:
            return transform_stump(map, x);
        case FeatureFamily::Binning:
            return transform_binning(&map, map, x);
    }
    throw InvalidArgument("transform: unknown family");
}

Matrix transform_frozen(const FittedFeatureMap& map, const Matrix& x) {
    check_transform_dims(map, x);
    switch (map.spec.family) {
        case FeatureFamily::Fourier:
        case FeatureFamily::SquareWave:
        case FeatureFamily::Walsh:
            return transform_cosine(map, x);
        case FeatureFamily::Stump:
            return transform_stump(map, x);
        case FeatureFamily::Binning:
            return transform_binning(nullptr, map, x);
    }
    throw InvalidArgument("transform_frozen: unknown family");
}

Matrix approx_gram(FittedFeatureMap& map, const Matrix& x1, const Matrix& x2) {
    Matrix z1 = transform(map, x1);
    if (&x1 == &x2) {
        // one triangle, mirrored: exactly symmetric
        Matrix g = Matrix::Zero(z1.rows(), z1.rows());
        g.selfadjointView<Eigen::Lower>().rankUpdate(z1);
        g = g.selfadjointView<Eigen::Lower>();
        return g;
    }
    const Matrix z2 = transform(map, x2);
    if (z1.cols() < z2.cols()) {
        // Binning may have discovered new cells while transforming x2; rows of
        // x1 are zero there.
        const Index old_cols = z1.cols();
        z1.conservativeResize(Eigen::NoChange, z2.cols());
        z1.rightCols(z2.cols() - old_cols).setZero();
    }
    return z1 * z2.transpose();
}

std::optional<KernelSpec> target_kernel(const FeatureMapSpec& spec) {
    switch (spec.family) {
        case FeatureFamily::Fourier:
            return KernelSpec::rbf(spec.sigma);
        case FeatureFamily::Stump:
            return KernelSpec::stump_l1(spec.a, spec.box_lo, spec.box_hi);
        case FeatureFamily::Binning:
            return KernelSpec::laplacian(spec.sigma);
        case FeatureFamily::SquareWave:
        case FeatureFamily::Walsh:
            return std::nullopt;
    }
    return std::nullopt;
}

FeatureFamily feature_family_from_name(const std::string& name) {
    if (name == "fourier") return FeatureFamily::Fourier;
    if (name == "squarewave") return FeatureFamily::SquareWave;
    if (name == "walsh") return FeatureFamily::Walsh;
    if (name == "stump") return FeatureFamily::Stump;
    if (name == "binning") return FeatureFamily::Binning;
    throw InvalidArgument("unknown feature family: " + name);
}

}  // namespace rfkit
