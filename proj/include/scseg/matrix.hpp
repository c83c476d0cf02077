#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scseg {

// Dense row-major matrix of doubles. Just enough linear-algebra plumbing for
// the fitting code; not a general-purpose type.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::span<const double> row(int r) const {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
};

// Copy of the given columns, preserving their order.
Matrix select_columns(const Matrix& m, std::span<const int> columns);

// Copy of the given rows, preserving their order.
Matrix select_rows(const Matrix& m, std::span<const int> rows);

}  // namespace scseg
