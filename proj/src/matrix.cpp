#include "scseg/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace scseg {

Matrix select_columns(const Matrix& m, std::span<const int> columns) {
    Matrix out(m.rows, static_cast<int>(columns.size()));
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < out.cols; ++c) {
            const int src = columns[c];
            if (src < 0 || src >= m.cols) throw std::out_of_range("column index out of range");
            out(r, c) = m(r, src);
        }
    }
    return out;
}

Matrix select_rows(const Matrix& m, std::span<const int> rows) {
    Matrix out(static_cast<int>(rows.size()), m.cols);
    for (int r = 0; r < out.rows; ++r) {
        const int src = rows[r];
        if (src < 0 || src >= m.rows) throw std::out_of_range("row index out of range");
        std::copy_n(m.data.data() + static_cast<std::size_t>(src) * m.cols, m.cols,
                    out.data.data() + static_cast<std::size_t>(r) * m.cols);
    }
    return out;
}

}  // namespace scseg
