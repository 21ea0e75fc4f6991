#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rfkit {

// Row = sample, column = feature/output throughout.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Task { Regression, BinaryClassification };

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad dimensions, bad parameters, contract violations.
struct InvalidArgument : Error {
    using Error::Error;
};

/// Unparseable or non-finite external data, I/O failures.
struct DataError : Error {
    using Error::Error;
};

/// Factorization failure, jitter ladder exhausted.
struct NumericError : Error {
    using Error::Error;
};

bool all_finite(const Matrix& m);

/// Throws DataError naming `what` and the offending entry.
void require_finite(const Matrix& m, const std::string& what);

std::string shape_str(const Matrix& m);

/// Gather the given rows of `m` into a new matrix.
Matrix take_rows(const Matrix& m, const std::vector<Index>& rows);

}  // namespace rfkit
