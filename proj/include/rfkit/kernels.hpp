#pragma once

#include <string>

#include "rfkit/types.hpp"

namespace rfkit {

enum class KernelFamily { Linear, Polynomial, RBF, Laplacian, StumpL1 };

/// Exact kernel description. These evaluations are the ground-truth oracle
/// the random feature maps are validated against.
///
///   Linear      k(x,y) = x'y
///   Polynomial  k(x,y) = (a x'y + b)^p          (PSD only for a,b >= 0)
///   RBF         k(x,y) = exp(-|x-y|^2 / (2 sigma^2))
///   Laplacian   k(x,y) = exp(-|x-y|_1 / (2 sigma^2))
///   StumpL1     k(x,y) = 1 - |x-y|_1 / a, valid on the box [lo, hi] only
///
/// The Laplacian keeps the 1/(2 sigma^2) bandwidth form; the common rate
/// parameterization is gamma = 1/(2 sigma^2).
struct KernelSpec {
    KernelFamily family = KernelFamily::RBF;
    double sigma = 1.0;  // RBF, Laplacian
    double a = 1.0;      // Polynomial scale, StumpL1 normalization
    double b = 0.0;      // Polynomial offset
    int degree = 1;      // Polynomial
    Vector box_lo, box_hi;  // StumpL1

    static KernelSpec linear();
    static KernelSpec polynomial(double a, double b, int degree);
    static KernelSpec rbf(double sigma);
    static KernelSpec laplacian(double sigma);
    static KernelSpec stump_l1(double a, Vector box_lo, Vector box_hi);

    void validate() const;  // throws InvalidArgument
    std::string family_name() const;
};

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y);

/// Pairwise kernel matrix, entry (i,j) = k(x1 row i, x2 row j). Distances use
/// the direct elementwise form, not the expanded-norm shortcut. Passing the
/// same matrix object twice computes one triangle and mirrors it, so the
/// result is exactly symmetric.
Matrix gram(const KernelSpec& spec, const Matrix& x1, const Matrix& x2);

}  // namespace rfkit
