#pragma once

#include "scseg/basis.hpp"
#include "scseg/cascade.hpp"
#include "scseg/image.hpp"

namespace scseg {

// Produces the hole-free background layer: per block, refits the smooth model
// by least squares to the pixels labeled background, then replaces foreground
// pixels with the model's prediction, clamped to [0, 255]. Background pixels
// pass through bit-identical. Blocks with fewer than K background pixels fall
// back to the mean of their background pixels, or to the block mean when no
// pixel is background.
GrayImage fill_background(const GrayImage& image, const SegmentationResult& result,
                          const BasisSet& basis);

}  // namespace scseg
