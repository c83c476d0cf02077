#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "scseg/matrix.hpp"

namespace scseg {

// Raised when a design matrix has numerically dependent columns. Callers
// decide the fallback (the cascade drops to an independent column subset).
struct RankDeficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitResult {
    std::vector<double> coeffs;     // one per design column
    std::vector<double> residuals;  // |value - prediction| per sample
};

// Least-squares fit of the values onto the design columns, solved with
// Householder QR rather than the explicit normal-equations inverse.
// Requires at least as many samples as columns.
FitResult fit_least_squares(std::span<const double> values, const Matrix& design);

// Least-squares fit that tolerates dependent columns and short sample sets:
// dependent columns are dropped (earlier columns win) and their coefficients
// reported as zero, so the result still has one coefficient per column.
FitResult fit_least_squares_reduced(std::span<const double> values, const Matrix& design);

// Greedy maximal subset of numerically independent columns, scanning left to
// right. A column is dropped when its component orthogonal to the already
// kept ones falls below rel_tol of its own norm.
std::vector<int> independent_columns(const Matrix& design, double rel_tol = 1e-9);

// Solves the square system rows * alpha = values exactly (partial-pivot LU).
// Returns nullopt when the system is singular or its 1-norm condition
// estimate exceeds 1e12, signalling that the sample is degenerate.
std::optional<std::vector<double>> solve_exact(std::span<const double> values,
                                               const Matrix& rows);

// design * coeffs.
std::vector<double> predict(std::span<const double> coeffs, const Matrix& design);

}  // namespace scseg
