#pragma once

#include <span>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/image.hpp"
#include "scseg/matrix.hpp"
#include "scseg/rng.hpp"

namespace scseg {

// Population standard deviation (divides by the count).
double stddev(std::span<const double> values);

struct PaletteStats {
    int distinct_count = 0;
    int range = 0;           // max - min of the quantized values
    int modal_value = 0;     // most frequent value; ties go to the smallest
    double modal_fraction = 0.0;
};

// Statistics over the block's intensities quantized to 8 bits.
PaletteStats palette_stats(std::span<const double> values);

struct BlockSegmentation {
    BlockDecision decision;
    std::vector<Label> labels;  // row-major within the block frame
};

// Per-block decision cascade, tested strictly in order:
//   1. stddev < const_std_tol            -> ConstantBlock, all background
//   2. LS fit on all pixels, every residual < inlier_tol
//                                        -> SmoothLeastSquares, all background
//   3. distinct colors < max_colors and range > min_range
//                                        -> PaletteOverConstant; the modal
//                                           color is background
//   4. otherwise                         -> RANSAC; inliers are background
//
// `design` is the basis matrix already restricted to the block's extent.
BlockSegmentation segment_block(std::span<const double> values, const Matrix& design,
                                const SegParams& params, Rng& rng);

struct SegmentationResult {
    LabelMask mask;
    int blocks_x = 0;
    int blocks_y = 0;
    std::vector<BlockRef> blocks;          // row-major block grid
    std::vector<BlockDecision> decisions;  // parallel to blocks
    SegParams params_used;
};

// Segments every block independently and assembles the full-image mask.
// threads = 0 picks a worker count automatically; 1 forces serial execution.
// The result does not depend on the thread count: each block draws from its
// own generator derived from (seed, block_row, block_col).
SegmentationResult segment_image(const GrayImage& image, const SegParams& params,
                                 int threads = 0);

}  // namespace scseg
