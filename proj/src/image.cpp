#include "scseg/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scseg {

GrayImage::GrayImage(int w, int h, double fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be at least 1x1");
    pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

LabelMask::LabelMask(int w, int h, Label fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("mask dimensions must be at least 1x1");
    labels.assign(static_cast<std::size_t>(w) * h, fill);
}

std::size_t LabelMask::foreground_count() const {
    std::size_t n = 0;
    for (Label l : labels) n += (l == Label::Foreground);
    return n;
}

void SegParams::validate() const {
    if (block_size < 1) throw std::invalid_argument("block_size must be >= 1");
    if (num_bases < 1 || num_bases > block_size * block_size)
        throw std::invalid_argument("num_bases must be in [1, block_size^2]");
    if (!(inlier_tol > 0)) throw std::invalid_argument("inlier_tol must be > 0");
    if (!(const_std_tol >= 0)) throw std::invalid_argument("const_std_tol must be >= 0");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (max_colors < 2) throw std::invalid_argument("max_colors must be >= 2");
    if (!(min_range >= 0)) throw std::invalid_argument("min_range must be >= 0");
    if (!(consensus_frac > 0.0 && consensus_frac <= 1.0))
        throw std::invalid_argument("consensus_frac must be in (0, 1]");
}

const char* stage_name(Stage stage) {
    switch (stage) {
        case Stage::ConstantBlock: return "constant";
        case Stage::SmoothLeastSquares: return "smooth_ls";
        case Stage::PaletteOverConstant: return "palette";
        case Stage::Ransac: return "ransac";
    }
    return "unknown";
}

std::vector<BlockRef> block_grid(const GrayImage& image, int block_size) {
    if (block_size < 1) throw std::invalid_argument("block_size must be >= 1");
    if (image.empty()) throw std::invalid_argument("cannot tile an empty image");
    const int bx = (image.width + block_size - 1) / block_size;
    const int by = (image.height + block_size - 1) / block_size;
    std::vector<BlockRef> blocks;
    blocks.reserve(static_cast<std::size_t>(bx) * by);
    for (int br = 0; br < by; ++br) {
        for (int bc = 0; bc < bx; ++bc) {
            BlockRef b;
            b.block_row = br;
            b.block_col = bc;
            b.x0 = bc * block_size;
            b.y0 = br * block_size;
            b.w = std::min(block_size, image.width - b.x0);
            b.h = std::min(block_size, image.height - b.y0);
            blocks.push_back(b);
        }
    }
    return blocks;
}

double bt601_luma(double r, double g, double b) {
    return std::round(0.299 * r + 0.587 * g + 0.114 * b);
}

GrayImage to_grayscale(int width, int height, std::span<const double> r,
                       std::span<const double> g, std::span<const double> b) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (r.size() != n || g.size() != n || b.size() != n)
        throw std::invalid_argument("channel lengths do not match the image dimensions");
    GrayImage out(width, height);
    for (std::size_t i = 0; i < n; ++i) out.pixels[i] = bt601_luma(r[i], g[i], b[i]);
    return out;
}

std::vector<double> block_pixels(const GrayImage& image, const BlockRef& block) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(block.w) * block.h);
    for (int y = 0; y < block.h; ++y) {
        const double* row = image.pixels.data() + image.index(block.x0, block.y0 + y);
        out.insert(out.end(), row, row + block.w);
    }
    return out;
}

}  // namespace scseg
