#include "scseg/ransac.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scseg/fitting.hpp"

namespace scseg {

RansacOutcome segment_block_ransac(std::span<const double> values, const Matrix& design,
                                   const SegParams& params, Rng& rng) {
    const int m = design.rows;
    const int k = design.cols;
    if (static_cast<int>(values.size()) != m)
        throw std::invalid_argument("value count does not match design rows");
    if (k < 1) throw std::invalid_argument("design needs at least one column");
    if (m < k) throw std::invalid_argument("block has fewer pixels than model parameters");

    const double tol = params.inlier_tol;
    const long max_draws = 10L * params.max_iters;
    long draws = 0;

    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Matrix sample(k, k);
    std::vector<double> sample_values(k);
    std::vector<std::uint8_t> candidate(m, 0);
    std::vector<std::uint8_t> best_mask;
    std::vector<double> best_coeffs;
    int best_count = 0;

    RansacOutcome out;
    for (int iter = 1; iter <= params.max_iters; ++iter) {
        out.iterations_used = iter;

        std::optional<std::vector<double>> coeffs;
        do {
            if (++draws > max_draws)
                throw std::runtime_error(
                    "RANSAC gave up: every pixel sample yields a degenerate system");
            // partial Fisher-Yates; perm stays a permutation across iterations
            for (int i = 0; i < k; ++i) {
                const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - i)));
                std::swap(perm[i], perm[j]);
            }
            for (int i = 0; i < k; ++i) {
                const int px = perm[i];
                sample_values[i] = values[px];
                const double* row = design.data.data() + static_cast<std::size_t>(px) * k;
                for (int c = 0; c < k; ++c) sample(i, c) = row[c];
            }
            coeffs = solve_exact(sample_values, sample);
        } while (!coeffs);

        int count = 0;
        for (int i = 0; i < m; ++i) {
            const double* row = design.data.data() + static_cast<std::size_t>(i) * k;
            double pred = 0.0;
            for (int c = 0; c < k; ++c) pred += row[c] * (*coeffs)[c];
            const bool inlier = std::abs(values[i] - pred) < tol;
            candidate[i] = inlier;
            count += inlier;
        }
        // strictly larger consensus wins; the earliest maximal set survives ties
        if (count > best_count) {
            best_count = count;
            best_mask = candidate;
            best_coeffs = std::move(*coeffs);
        }
        if (static_cast<double>(best_count) >= params.consensus_frac * m) {
            out.early_exit = true;
            break;
        }
    }

    out.inlier_mask = std::move(best_mask);
    out.coeffs = std::move(best_coeffs);
    return out;
}

}  // namespace scseg
