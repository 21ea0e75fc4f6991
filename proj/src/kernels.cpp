#include "rfkit/kernels.hpp"

#include <cmath>

namespace rfkit {

KernelSpec KernelSpec::linear() {
    KernelSpec s;
    s.family = KernelFamily::Linear;
    return s;
}

KernelSpec KernelSpec::polynomial(double a, double b, int degree) {
    KernelSpec s;
    s.family = KernelFamily::Polynomial;
    s.a = a;
    s.b = b;
    s.degree = degree;
    s.validate();
    return s;
}

KernelSpec KernelSpec::rbf(double sigma) {
    KernelSpec s;
    s.family = KernelFamily::RBF;
    s.sigma = sigma;
    s.validate();
    return s;
}

KernelSpec KernelSpec::laplacian(double sigma) {
    KernelSpec s;
    s.family = KernelFamily::Laplacian;
    s.sigma = sigma;
    s.validate();
    return s;
}

KernelSpec KernelSpec::stump_l1(double a, Vector box_lo, Vector box_hi) {
    KernelSpec s;
    s.family = KernelFamily::StumpL1;
    s.a = a;
    s.box_lo = std::move(box_lo);
    s.box_hi = std::move(box_hi);
    s.validate();
    return s;
}

void KernelSpec::validate() const {
    switch (family) {
        case KernelFamily::Linear:
            break;
        case KernelFamily::Polynomial:
            if (degree < 1) throw InvalidArgument("polynomial kernel: degree must be >= 1");
            break;
        case KernelFamily::RBF:
        case KernelFamily::Laplacian:
            if (!(sigma > 0.0)) throw InvalidArgument(family_name() + " kernel: sigma must be > 0");
            break;
        case KernelFamily::StumpL1:
            if (!(a > 0.0)) throw InvalidArgument("stump kernel: a must be > 0");
            if (box_lo.size() == 0 || box_lo.size() != box_hi.size()) {
                throw InvalidArgument("stump kernel: box_lo/box_hi sizes disagree");
            }
            for (Index j = 0; j < box_lo.size(); ++j) {
                if (!(box_lo(j) < box_hi(j))) {
                    throw InvalidArgument("stump kernel: box_lo must be < box_hi componentwise");
                }
            }
            break;
    }
}

std::string KernelSpec::family_name() const {
    switch (family) {
        case KernelFamily::Linear: return "linear";
        case KernelFamily::Polynomial: return "polynomial";
        case KernelFamily::RBF: return "rbf";
        case KernelFamily::Laplacian: return "laplacian";
        case KernelFamily::StumpL1: return "stump-l1";
    }
    return "?";
}

namespace {

void check_in_box(const KernelSpec& spec, const Eigen::Ref<const Vector>& v) {
    for (Index j = 0; j < v.size(); ++j) {
        if (v(j) < spec.box_lo(j) || v(j) > spec.box_hi(j)) {
            throw InvalidArgument("stump kernel: input outside the box at dimension " +
                                  std::to_string(j));
        }
    }
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y) {
    if (x.size() != y.size()) {
        throw InvalidArgument("kernel_eval: x has " + std::to_string(x.size()) +
                              " entries, y has " + std::to_string(y.size()));
    }
    switch (spec.family) {
        case KernelFamily::Linear:
            return x.dot(y);
        case KernelFamily::Polynomial:
            return std::pow(spec.a * x.dot(y) + spec.b, spec.degree);
        case KernelFamily::RBF: {
            const double d2 = (x - y).squaredNorm();
            return std::exp(-d2 / (2.0 * spec.sigma * spec.sigma));
        }
        case KernelFamily::Laplacian: {
            const double d1 = (x - y).cwiseAbs().sum();
            return std::exp(-d1 / (2.0 * spec.sigma * spec.sigma));
        }
        case KernelFamily::StumpL1: {
            if (x.size() != spec.box_lo.size()) {
                throw InvalidArgument("kernel_eval: stump box dimension mismatch");
            }
            check_in_box(spec, x);
            check_in_box(spec, y);
            const double d1 = (x - y).cwiseAbs().sum();
            return 1.0 - d1 / spec.a;
        }
    }
    throw InvalidArgument("kernel_eval: unknown family");
}

Matrix gram(const KernelSpec& spec, const Matrix& x1, const Matrix& x2) {
    spec.validate();
    if (x1.cols() != x2.cols()) {
        throw InvalidArgument("gram: column counts differ (" + shape_str(x1) + " vs " +
                              shape_str(x2) + ")");
    }
    Matrix k(x1.rows(), x2.rows());
    if (&x1 == &x2) {
        for (Index i = 0; i < x1.rows(); ++i) {
            for (Index j = i; j < x1.rows(); ++j) {
                const double v = kernel_eval(spec, x1.row(i).transpose(), x1.row(j).transpose());
                k(i, j) = v;
                k(j, i) = v;
            }
        }
    } else {
        for (Index i = 0; i < x1.rows(); ++i) {
            for (Index j = 0; j < x2.rows(); ++j) {
                k(i, j) = kernel_eval(spec, x1.row(i).transpose(), x2.row(j).transpose());
            }
        }
    }
    return k;
}

}  // namespace rfkit
