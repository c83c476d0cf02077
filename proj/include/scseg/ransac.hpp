#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scseg/image.hpp"
#include "scseg/matrix.hpp"
#include "scseg/rng.hpp"

namespace scseg {

struct RansacOutcome {
    std::vector<std::uint8_t> inlier_mask;  // 1 = inlier, i.e. background
    std::vector<double> coeffs;             // winning model, one per design column
    int iterations_used = 0;
    bool early_exit = false;
};

// Robust segmentation of one block. Each iteration interpolates the model
// through K randomly chosen pixels, counts the pixels predicted within
// params.inlier_tol, and keeps the candidate with the strictly largest
// consensus set. Stops after params.max_iters iterations or as soon as the
// best consensus covers params.consensus_frac of the block. The largest
// consensus set is the background; its model's coefficients are returned
// as-is (no refit).
//
// K is the number of design columns. Singular samples are redrawn within the
// same iteration; after 10 * max_iters total draws the block is declared
// pathological and a std::runtime_error is raised. Throws
// std::invalid_argument when the block has fewer pixels than K.
//
// Identical (values, design, params, rng state) produce a bit-identical
// outcome.
RansacOutcome segment_block_ransac(std::span<const double> values, const Matrix& design,
                                   const SegParams& params, Rng& rng);

}  // namespace scseg
