#include "rfkit/types.hpp"

#include <cmath>
#include <sstream>

namespace rfkit {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

void require_finite(const Matrix& m, const std::string& what) {
    if (m.allFinite()) return;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (!std::isfinite(m(i, j))) {
                std::ostringstream msg;
                msg << what << ": non-finite value at row " << i << ", column " << j;
                throw DataError(msg.str());
            }
        }
    }
}

std::string shape_str(const Matrix& m) {
    std::ostringstream s;
    s << m.rows() << "x" << m.cols();
    return s.str();
}

Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
    Matrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Index>(i)) = m.row(rows[i]);
    }
    return out;
}

}  // namespace rfkit
