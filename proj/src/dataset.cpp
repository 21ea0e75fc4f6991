#include "rfkit/dataset.hpp"

#include <cmath>
#include <numbers>

namespace rfkit {

Dataset Dataset::make(Matrix inputs, Matrix targets, Task task) {
    if (inputs.rows() != targets.rows()) {
        throw InvalidArgument("Dataset: inputs have " + std::to_string(inputs.rows()) +
                              " rows, targets have " + std::to_string(targets.rows()));
    }
    require_finite(inputs, "Dataset inputs");
    require_finite(targets, "Dataset targets");
    if (task == Task::BinaryClassification) {
        if (targets.cols() != 1) {
            throw InvalidArgument("Dataset: classification targets must be a single column");
        }
        for (Index i = 0; i < targets.rows(); ++i) {
            const double v = targets(i, 0);
            if (v != 1.0 && v != -1.0) {
                throw InvalidArgument("Dataset: classification label at row " +
                                      std::to_string(i) + " is " + std::to_string(v) +
                                      ", expected -1 or +1");
            }
        }
    }
    return Dataset{std::move(inputs), std::move(targets), task};
}

Dataset Dataset::slice(Index begin, Index count) const {
    if (begin < 0 || count < 0 || begin + count > n_samples()) {
        throw InvalidArgument("Dataset::slice: range out of bounds");
    }
    Dataset out;
    out.inputs = inputs.middleRows(begin, count);
    out.targets = targets.middleRows(begin, count);
    out.task = task;
    return out;
}

double synthetic_mean(SyntheticKind kind, const Vector& x) {
    switch (kind) {
        case SyntheticKind::SincND: {
            const double r = x.norm();
            return r == 0.0 ? 1.0 : std::sin(3.0 * r) / (3.0 * r);
        }
        case SyntheticKind::SumSines:
            return (3.0 * x.array()).sin().sum();
        case SyntheticKind::XorBlobs: {
            if (x.size() < 2) throw InvalidArgument("XorBlobs needs d >= 2");
            const double s1 = x(0) >= 0.0 ? 1.0 : -1.0;
            const double s2 = x(1) >= 0.0 ? 1.0 : -1.0;
            return s1 * s2;
        }
        case SyntheticKind::LinearNoise:
            throw InvalidArgument("LinearNoise mean depends on the drawn weights");
    }
    throw InvalidArgument("unknown synthetic kind");
}

Dataset gen_synthetic(SyntheticKind kind, Index n, Index d, double noise_std,
                      const RngStream& rng) {
    if (n < 1 || d < 1) throw InvalidArgument("gen_synthetic: n and d must be >= 1");
    if (noise_std < 0.0) throw InvalidArgument("gen_synthetic: negative noise_std");

    const RngStream rx = rng.substream(0);
    const RngStream rnoise = rng.substream(1);

    Matrix x(n, d);
    Matrix y(n, 1);
    Task task = Task::Regression;

    switch (kind) {
        case SyntheticKind::SincND:
        case SyntheticKind::SumSines: {
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < d; ++j) {
                    x(i, j) = -2.0 + 4.0 * rx.uniform(static_cast<std::uint64_t>(i * d + j));
                }
                y(i, 0) = synthetic_mean(kind, x.row(i).transpose());
                if (noise_std > 0.0) {
                    y(i, 0) += noise_std * rnoise.gaussian(static_cast<std::uint64_t>(i));
                }
            }
            break;
        }
        case SyntheticKind::XorBlobs: {
            if (d < 2) throw InvalidArgument("XorBlobs needs d >= 2");
            task = Task::BinaryClassification;
            for (Index i = 0; i < n; ++i) {
                const std::uint64_t w = rx.word(static_cast<std::uint64_t>(i));
                const double s1 = (w & 1u) ? 1.0 : -1.0;
                const double s2 = (w & 2u) ? 1.0 : -1.0;
                x(i, 0) = s1 + noise_std * rnoise.gaussian(static_cast<std::uint64_t>(i * d));
                x(i, 1) = s2 + noise_std * rnoise.gaussian(static_cast<std::uint64_t>(i * d + 1));
                for (Index j = 2; j < d; ++j) {
                    x(i, j) = rnoise.gaussian(static_cast<std::uint64_t>(i * d + j));
                }
                y(i, 0) = s1 * s2;
            }
            break;
        }
        case SyntheticKind::LinearNoise: {
            const Matrix w0 = draw_gaussian(rng.substream(2), d, 1, 1.0);
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < d; ++j) {
                    x(i, j) = rx.gaussian(static_cast<std::uint64_t>(i * d + j));
                }
            }
            y = x * w0;
            if (noise_std > 0.0) {
                for (Index i = 0; i < n; ++i) {
                    y(i, 0) += noise_std * rnoise.gaussian(static_cast<std::uint64_t>(i));
                }
            }
            break;
        }
    }
    return Dataset::make(std::move(x), std::move(y), task);
}

SyntheticKind synthetic_kind_from_name(const std::string& name) {
    if (name == "sincnd") return SyntheticKind::SincND;
    if (name == "sumsines") return SyntheticKind::SumSines;
    if (name == "xorblobs") return SyntheticKind::XorBlobs;
    if (name == "linearnoise") return SyntheticKind::LinearNoise;
    throw InvalidArgument("unknown synthetic kind: " + name);
}

}  // namespace rfkit
