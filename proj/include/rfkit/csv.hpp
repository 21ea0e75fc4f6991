#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rfkit/dataset.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

/// Which columns of a CSV file hold the targets.
/// Parse accepts "last", "last:K" (last K columns), or a comma-separated list
/// of zero-based column indices such as "3" or "3,4".
struct TargetSelector {
    std::vector<Index> columns;  // resolved against a concrete width
    int last_k = 0;              // > 0 means "last K columns"

    static TargetSelector parse(const std::string& text);
    std::vector<Index> resolve(Index n_cols) const;
};

/// Numeric CSV: '.' decimal point, no thousands separators, one sample per
/// line. Errors carry 1-based file line numbers.
Matrix load_csv_matrix(const std::string& path, bool has_header);

/// Split a CSV file into a Dataset. Classification targets must be -1/+1;
/// remap01 maps 0/1 labels onto -1/+1 first.
Dataset load_csv_dataset(const std::string& path, const TargetSelector& targets,
                         Task task, bool has_header, bool remap01 = false);

void write_csv_matrix(std::ostream& out, const Matrix& m);
void save_csv_matrix(const std::string& path, const Matrix& m);

/// Inputs then targets, one row per sample; optional generated header
/// x0,...,y0,... for readability.
void save_csv_dataset(const std::string& path, const Dataset& data, bool header);

}  // namespace rfkit
