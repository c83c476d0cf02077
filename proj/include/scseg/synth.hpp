#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/image.hpp"

namespace scseg {

enum class SynthKind {
    Constant,            // flat block, empty truth
    Smooth,              // clamp(P * alpha), empty truth
    PaletteText,         // flat background with strokes in a second color
    SmoothPlusOutliers,  // smooth surface with displaced pixels
};

// Deterministic generator spec. Smooth surfaces without explicit coefficients
// are drawn at random and rescaled into [16, 240], so clamping never pulls
// them out of the basis span.
struct SynthSpec {
    int block_side = 64;
    SynthKind kind = SynthKind::Smooth;
    std::optional<std::vector<double>> coeffs;  // smooth model; drawn when absent
    double outlier_fraction = 0.05;             // of the block; also the stroke density
    double outlier_offset = 100.0;              // intensity delta of outliers / strokes
    double base_value = 128.0;                  // flat level for Constant and PaletteText
    std::uint64_t seed = 0;

    // Outliers must stay a minority; throws std::invalid_argument when
    // outlier_fraction is not in [0, 0.5) or block_side < 1.
    void validate() const;
};

struct SynthBlock {
    GrayImage image;
    LabelMask truth;             // foreground = injected outliers / strokes
    std::vector<double> coeffs;  // effective generating model; empty for PaletteText
};

// Same spec in, same block out, always. SmoothPlusOutliers displaces exactly
// floor(outlier_fraction * N^2) distinct pixels by outlier_offset, saturating
// at [0, 255]; PaletteText paints the same number of stroke pixels in
// clamp(base_value + outlier_offset). The truth mask marks exactly those
// pixels.
SynthBlock generate(const SynthSpec& spec, const BasisSet& basis);

}  // namespace scseg
