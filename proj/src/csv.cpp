#include "rfkit/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace rfkit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_field(const std::string& field, std::size_t line_no, std::size_t col) {
    const std::string t = trim(field);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || t.empty()) {
        throw DataError("CSV parse error at line " + std::to_string(line_no) +
                        ", column " + std::to_string(col + 1) + ": '" + t + "'");
    }
    if (!std::isfinite(value)) {
        throw DataError("CSV non-finite value at line " + std::to_string(line_no) +
                        ", column " + std::to_string(col + 1));
    }
    return value;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

void format_value(std::string& out, double v) {
    char buf[32];
    // 17 significant digits: parses back to the identical double
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

TargetSelector TargetSelector::parse(const std::string& text) {
    TargetSelector sel;
    const std::string t = trim(text);
    if (t == "last") {
        sel.last_k = 1;
        return sel;
    }
    if (t.rfind("last:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(t.substr(5));
        } catch (const std::exception&) {
            throw InvalidArgument("target selector: bad count in '" + t + "'");
        }
        if (k < 1) throw InvalidArgument("target selector: last:K needs K >= 1");
        sel.last_k = k;
        return sel;
    }
    for (const auto& field : split_line(t)) {
        const std::string f = trim(field);
        std::size_t pos = 0;
        long v = -1;
        try {
            v = std::stol(f, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("target selector: bad column index '" + f + "'");
        }
        if (pos != f.size() || v < 0) {
            throw InvalidArgument("target selector: bad column index '" + f + "'");
        }
        sel.columns.push_back(static_cast<Index>(v));
    }
    if (sel.columns.empty()) throw InvalidArgument("target selector: no columns given");
    return sel;
}

std::vector<Index> TargetSelector::resolve(Index n_cols) const {
    std::vector<Index> cols;
    if (last_k > 0) {
        if (static_cast<Index>(last_k) >= n_cols) {
            throw DataError("target selector: file has only " + std::to_string(n_cols) +
                            " columns, cannot take last " + std::to_string(last_k) +
                            " as targets");
        }
        for (int i = 0; i < last_k; ++i) {
            cols.push_back(n_cols - last_k + i);
        }
    } else {
        cols = columns;
        for (Index c : cols) {
            if (c >= n_cols) {
                throw DataError("target selector: column " + std::to_string(c) +
                                " out of range for " + std::to_string(n_cols) + " columns");
            }
        }
        if (static_cast<Index>(cols.size()) >= n_cols) {
            throw DataError("target selector: no input columns left");
        }
    }
    return cols;
}

Matrix load_csv_matrix(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && has_header) continue;
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            row[c] = parse_field(fields[c], line_no, c);
        }
        if (width == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw DataError("CSV ragged row at line " + std::to_string(line_no) +
                            ": expected " + std::to_string(width) + " fields, got " +
                            std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("'" + path + "' contains no data rows");

    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return m;
}

Dataset load_csv_dataset(const std::string& path, const TargetSelector& targets,
                         Task task, bool has_header, bool remap01) {
    const Matrix all = load_csv_matrix(path, has_header);
    const auto target_cols = targets.resolve(all.cols());

    std::vector<bool> is_target(static_cast<std::size_t>(all.cols()), false);
    for (Index c : target_cols) is_target[static_cast<std::size_t>(c)] = true;

    Matrix x(all.rows(), all.cols() - static_cast<Index>(target_cols.size()));
    Matrix y(all.rows(), static_cast<Index>(target_cols.size()));
    Index xi = 0;
    for (Index c = 0; c < all.cols(); ++c) {
        if (!is_target[static_cast<std::size_t>(c)]) x.col(xi++) = all.col(c);
    }
    for (std::size_t t = 0; t < target_cols.size(); ++t) {
        y.col(static_cast<Index>(t)) = all.col(target_cols[t]);
    }

    if (task == Task::BinaryClassification && remap01) {
        for (Index i = 0; i < y.rows(); ++i) {
            for (Index j = 0; j < y.cols(); ++j) {
                if (y(i, j) == 0.0) y(i, j) = -1.0;
                else if (y(i, j) == 1.0) y(i, j) = 1.0;
            }
        }
    }
    return Dataset::make(std::move(x), std::move(y), task);
}

void write_csv_matrix(std::ostream& out, const Matrix& m) {
    std::string line;
    for (Index i = 0; i < m.rows(); ++i) {
        line.clear();
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) line += ',';
            format_value(line, m(i, j));
        }
        line += '\n';
        out << line;
    }
}

void save_csv_matrix(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    write_csv_matrix(out, m);
}

void save_csv_dataset(const std::string& path, const Dataset& data, bool header) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    if (header) {
        std::string h;
        for (Index j = 0; j < data.input_dim(); ++j) {
            if (j) h += ',';
            h += "x" + std::to_string(j);
        }
        for (Index j = 0; j < data.target_dim(); ++j) {
            h += ",y" + std::to_string(j);
        }
        out << h << '\n';
    }
    Matrix joined(data.n_samples(), data.input_dim() + data.target_dim());
    joined << data.inputs, data.targets;
    write_csv_matrix(out, joined);
}

}  // namespace rfkit
