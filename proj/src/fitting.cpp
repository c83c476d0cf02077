#include "scseg/fitting.hpp"

#include <cmath>
#include <cstdlib>

namespace scseg {
namespace {

constexpr double kRankTol = 1e-12;
constexpr double kMaxCondition = 1e12;

std::vector<double> absolute_residuals(std::span<const double> values, const Matrix& design,
                                       std::span<const double> coeffs) {
    std::vector<double> res(values.size());
    for (int i = 0; i < design.rows; ++i) {
        const double* row = design.data.data() + static_cast<std::size_t>(i) * design.cols;
        double pred = 0.0;
        for (int c = 0; c < design.cols; ++c) pred += row[c] * coeffs[c];
        res[i] = std::abs(values[i] - pred);
    }
    return res;
}

// Householder QR on a column-major copy; returns the LS coefficients.
// Throws RankDeficientError when the R diagonal collapses.
std::vector<double> householder_solve(std::span<const double> values, const Matrix& design) {
    const int m = design.rows;
    const int k = design.cols;
    std::vector<double> a(static_cast<std::size_t>(m) * k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(j) * m + i] = design(i, j);
    std::vector<double> b(values.begin(), values.end());
    std::vector<double> diag(k, 0.0);

    for (int j = 0; j < k; ++j) {
        double* col = &a[static_cast<std::size_t>(j) * m];
        double ss = 0.0;
        for (int i = j; i < m; ++i) ss += col[i] * col[i];
        const double norm = std::sqrt(ss);
        if (norm == 0.0) continue;  // diag[j] stays 0, flagged below
        const double alpha = col[j] > 0 ? -norm : norm;
        col[j] -= alpha;  // reflector v now lives in col[j..m)
        double vtv = 0.0;
        for (int i = j; i < m; ++i) vtv += col[i] * col[i];
        const double beta = 2.0 / vtv;
        for (int l = j + 1; l < k; ++l) {
            double* cl = &a[static_cast<std::size_t>(l) * m];
            double dot = 0.0;
            for (int i = j; i < m; ++i) dot += col[i] * cl[i];
            dot *= beta;
            for (int i = j; i < m; ++i) cl[i] -= dot * col[i];
        }
        double dot = 0.0;
        for (int i = j; i < m; ++i) dot += col[i] * b[i];
        dot *= beta;
        for (int i = j; i < m; ++i) b[i] -= dot * col[i];
        col[j] = alpha;  // R(j,j); the reflector below is no longer needed
        diag[j] = std::abs(alpha);
    }

    double max_diag = 0.0, min_diag = 0.0;
    for (int j = 0; j < k; ++j) {
        max_diag = std::max(max_diag, diag[j]);
        min_diag = (j == 0) ? diag[j] : std::min(min_diag, diag[j]);
    }
    if (max_diag == 0.0 || min_diag <= max_diag * kRankTol)
        throw RankDeficientError("design matrix is rank-deficient");

    std::vector<double> coeffs(k);
    for (int j = k - 1; j >= 0; --j) {
        double s = b[j];
        for (int l = j + 1; l < k; ++l) s -= a[static_cast<std::size_t>(l) * m + j] * coeffs[l];
        coeffs[j] = s / a[static_cast<std::size_t>(j) * m + j];
    }
    return coeffs;
}

struct Lu {
    int k = 0;
    std::vector<double> lu;  // row-major combined factors
    std::vector<int> piv;

    // Solves in place.
    void solve(std::vector<double>& x) const {
        for (int c = 0; c < k; ++c)
            if (piv[c] != c) std::swap(x[c], x[piv[c]]);
        for (int r = 1; r < k; ++r) {
            double s = x[r];
            for (int c = 0; c < r; ++c) s -= lu[static_cast<std::size_t>(r) * k + c] * x[c];
            x[r] = s;
        }
        for (int r = k - 1; r >= 0; --r) {
            double s = x[r];
            for (int c = r + 1; c < k; ++c) s -= lu[static_cast<std::size_t>(r) * k + c] * x[c];
            x[r] = s / lu[static_cast<std::size_t>(r) * k + r];
        }
    }
};

std::optional<Lu> lu_factor(const Matrix& m) {
    Lu f;
    f.k = m.cols;
    f.lu = m.data;
    f.piv.resize(f.k);
    const int k = f.k;
    for (int c = 0; c < k; ++c) {
        int p = c;
        double best = std::abs(f.lu[static_cast<std::size_t>(c) * k + c]);
        for (int r = c + 1; r < k; ++r) {
            const double v = std::abs(f.lu[static_cast<std::size_t>(r) * k + c]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) return std::nullopt;
        f.piv[c] = p;
        if (p != c)
            for (int cc = 0; cc < k; ++cc)
                std::swap(f.lu[static_cast<std::size_t>(c) * k + cc],
                          f.lu[static_cast<std::size_t>(p) * k + cc]);
        const double inv = 1.0 / f.lu[static_cast<std::size_t>(c) * k + c];
        for (int r = c + 1; r < k; ++r) {
            const double factor = f.lu[static_cast<std::size_t>(r) * k + c] * inv;
            f.lu[static_cast<std::size_t>(r) * k + c] = factor;
            if (factor == 0.0) continue;
            for (int cc = c + 1; cc < k; ++cc)
                f.lu[static_cast<std::size_t>(r) * k + cc] -=
                    factor * f.lu[static_cast<std::size_t>(c) * k + cc];
        }
    }
    return f;
}

double one_norm(const Matrix& m) {
    double norm = 0.0;
    for (int c = 0; c < m.cols; ++c) {
        double s = 0.0;
        for (int r = 0; r < m.rows; ++r) s += std::abs(m(r, c));
        norm = std::max(norm, s);
    }
    return norm;
}

}  // namespace

FitResult fit_least_squares(std::span<const double> values, const Matrix& design) {
    if (static_cast<int>(values.size()) != design.rows)
        throw std::invalid_argument("value count does not match design rows");
    if (design.cols < 1) throw std::invalid_argument("design needs at least one column");
    if (design.rows < design.cols)
        throw std::invalid_argument("need at least as many samples as basis functions");

    FitResult fit;
    fit.coeffs = householder_solve(values, design);
    fit.residuals = absolute_residuals(values, design, fit.coeffs);
    return fit;
}

FitResult fit_least_squares_reduced(std::span<const double> values, const Matrix& design) {
    if (static_cast<int>(values.size()) != design.rows)
        throw std::invalid_argument("value count does not match design rows");

    const std::vector<int> kept = independent_columns(design);
    FitResult fit;
    fit.coeffs.assign(design.cols, 0.0);
    if (kept.empty()) {  // all-zero design: the zero model
        fit.residuals = absolute_residuals(values, design, fit.coeffs);
        return fit;
    }
    const Matrix sub = select_columns(design, kept);
    const FitResult subfit = fit_least_squares(values, sub);
    for (std::size_t i = 0; i < kept.size(); ++i) fit.coeffs[kept[i]] = subfit.coeffs[i];
    fit.residuals = subfit.residuals;
    return fit;
}

std::vector<int> independent_columns(const Matrix& design, double rel_tol) {
    const int m = design.rows;
    const int k = design.cols;
    std::vector<int> kept;
    std::vector<std::vector<double>> q;  // orthonormal span of the kept columns
    std::vector<double> col(m);
    for (int j = 0; j < k; ++j) {
        double norm0 = 0.0;
        for (int i = 0; i < m; ++i) {
            col[i] = design(i, j);
            norm0 += col[i] * col[i];
        }
        norm0 = std::sqrt(norm0);
        if (norm0 == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {  // MGS, reorthogonalized
            for (const auto& e : q) {
                double dot = 0.0;
                for (int i = 0; i < m; ++i) dot += e[i] * col[i];
                for (int i = 0; i < m; ++i) col[i] -= dot * e[i];
            }
        }
        double norm = 0.0;
        for (double c : col) norm += c * c;
        norm = std::sqrt(norm);
        if (norm <= rel_tol * norm0) continue;
        for (double& c : col) c /= norm;
        q.push_back(col);
        kept.push_back(j);
    }
    return kept;
}

std::optional<std::vector<double>> solve_exact(std::span<const double> values,
                                               const Matrix& rows) {
    const int k = rows.cols;
    if (rows.rows != k) throw std::invalid_argument("sample system must be square");
    if (static_cast<int>(values.size()) != k)
        throw std::invalid_argument("need one value per sample row");

    const auto factors = lu_factor(rows);
    if (!factors) return std::nullopt;

    // 1-norm condition estimate from the explicit inverse; K is small.
    double inv_norm = 0.0;
    std::vector<double> e(k);
    for (int j = 0; j < k; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        factors->solve(e);
        double s = 0.0;
        for (double v : e) s += std::abs(v);
        inv_norm = std::max(inv_norm, s);
    }
    const double cond = one_norm(rows) * inv_norm;
    if (!(cond < kMaxCondition)) return std::nullopt;

    std::vector<double> x(values.begin(), values.end());
    factors->solve(x);
    for (double v : x)
        if (!std::isfinite(v)) return std::nullopt;
    return x;
}

std::vector<double> predict(std::span<const double> coeffs, const Matrix& design) {
    if (static_cast<int>(coeffs.size()) != design.cols)
        throw std::invalid_argument("coefficient count does not match design columns");
    std::vector<double> out(design.rows, 0.0);
    for (int i = 0; i < design.rows; ++i) {
        const double* row = design.data.data() + static_cast<std::size_t>(i) * design.cols;
        double s = 0.0;
        for (int c = 0; c < design.cols; ++c) s += row[c] * coeffs[c];
        out[i] = s;
    }
    return out;
}

}  // namespace scseg
