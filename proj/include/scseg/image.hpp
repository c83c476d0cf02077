#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace scseg {

enum class Label : std::uint8_t { Background = 0, Foreground = 1 };

// Grayscale image with real-valued intensities, nominal range [0, 255].
// Intensities stay real internally so fitting residuals are exact; file
// loaders quantize to 8 bits. Pixels are row-major: index(x, y) = y * width + x.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0);

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    double at(int x, int y) const { return pixels[index(x, y)]; }
    double& at(int x, int y) { return pixels[index(x, y)]; }
    bool empty() const { return pixels.empty(); }
};

// Per-pixel background/foreground labels, same layout as GrayImage.
struct LabelMask {
    int width = 0;
    int height = 0;
    std::vector<Label> labels;

    LabelMask() = default;
    LabelMask(int w, int h, Label fill = Label::Background);

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    Label at(int x, int y) const { return labels[index(x, y)]; }
    Label& at(int x, int y) { return labels[index(x, y)]; }
    std::size_t foreground_count() const;

    bool operator==(const LabelMask&) const = default;
};

// Algorithm thresholds and sizes. The defaults are the reference
// configuration; `segment` with no flags runs exactly these values.
struct SegParams {
    int block_size = 64;           // N: pixels per block side
    int num_bases = 10;            // K: number of basis functions
    double inlier_tol = 10.0;      // max |error| for a pixel to count as background
    int max_iters = 200;           // RANSAC iteration cap
    double const_std_tol = 3.0;    // std-dev threshold for constant blocks
    int max_colors = 10;           // distinct-intensity count threshold
    double min_range = 50.0;       // intensity-range threshold
    double consensus_frac = 0.95;  // early-exit inlier fraction, in (0, 1]
    std::uint64_t seed = 0;

    // Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

// One tile of the block grid. Interior blocks are N x N; blocks on the right
// and bottom edges may be smaller.
struct BlockRef {
    int block_row = 0;
    int block_col = 0;
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;
};

enum class Stage : std::uint8_t {
    ConstantBlock,
    SmoothLeastSquares,
    PaletteOverConstant,
    Ransac,
};

const char* stage_name(Stage stage);

// Which cascade stage labeled a block, plus the model it settled on.
struct BlockDecision {
    Stage stage = Stage::ConstantBlock;
    std::optional<std::vector<double>> coeffs;    // SmoothLeastSquares and Ransac
    std::optional<double> background_color;       // PaletteOverConstant
};

// Tiles the image into non-overlapping blocks, row-major over the block grid.
std::vector<BlockRef> block_grid(const GrayImage& image, int block_size);

// BT.601 luma, rounded to the nearest integer.
double bt601_luma(double r, double g, double b);

GrayImage to_grayscale(int width, int height, std::span<const double> r,
                       std::span<const double> g, std::span<const double> b);

// The block's pixels in row-major order within the block frame
// (y outer, x inner) — the same order the restricted basis rows use.
std::vector<double> block_pixels(const GrayImage& image, const BlockRef& block);

}  // namespace scseg
