#include "scseg/cascade.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "scseg/fitting.hpp"
#include "scseg/ransac.hpp"

namespace scseg {

double stddev(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("stddev of an empty set");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(values.size()));
}

namespace {

int quantize8(double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0))); }

std::vector<double> expand_coeffs(const std::vector<double>& coeffs,
                                  const std::vector<int>& kept, int full_cols) {
    if (kept.empty()) return coeffs;  // fit ran on the full design
    std::vector<double> full(full_cols, 0.0);
    for (std::size_t i = 0; i < kept.size(); ++i) full[kept[i]] = coeffs[i];
    return full;
}

}  // namespace

PaletteStats palette_stats(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("palette_stats of an empty set");
    std::array<int, 256> histogram{};
    for (double v : values) ++histogram[quantize8(v)];

    PaletteStats stats;
    int lo = 255, hi = 0, best = 0;
    for (int v = 0; v < 256; ++v) {
        if (histogram[v] == 0) continue;
        ++stats.distinct_count;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (histogram[v] > best) {  // strict: ties keep the smaller value
            best = histogram[v];
            stats.modal_value = v;
        }
    }
    stats.range = hi - lo;
    stats.modal_fraction = static_cast<double>(best) / static_cast<double>(values.size());
    return stats;
}

BlockSegmentation segment_block(std::span<const double> values, const Matrix& design,
                                const SegParams& params, Rng& rng) {
    if (values.empty()) throw std::invalid_argument("cannot segment an empty block");
    if (static_cast<int>(values.size()) != design.rows)
        throw std::invalid_argument("value count does not match design rows");

    BlockSegmentation out;
    out.labels.assign(values.size(), Label::Background);

    // 1. nearly constant
    if (stddev(values) < params.const_std_tol) {
        out.decision.stage = Stage::ConstantBlock;
        return out;
    }

    // 2. smooth least squares over every pixel. Edge slivers can make the
    // restricted basis rank-deficient or leave fewer pixels than bases; those
    // blocks run on the maximal independent column subset instead.
    std::vector<int> kept;
    Matrix reduced;
    const Matrix* active = &design;
    FitResult fit;
    bool fitted = false;
    if (design.rows >= design.cols) {
        try {
            fit = fit_least_squares(values, design);
            fitted = true;
        } catch (const RankDeficientError&) {
        }
    }
    if (!fitted) {
        kept = independent_columns(design);
        reduced = select_columns(design, kept);
        fit = fit_least_squares(values, reduced);
        active = &reduced;
    }
    const bool all_inliers =
        std::all_of(fit.residuals.begin(), fit.residuals.end(),
                    [&](double r) { return r < params.inlier_tol; });
    if (all_inliers) {
        out.decision.stage = Stage::SmoothLeastSquares;
        out.decision.coeffs = expand_coeffs(fit.coeffs, kept, design.cols);
        return out;
    }

    // 3. few colors over a wide range: text/graphics on a constant background
    const PaletteStats palette = palette_stats(values);
    if (palette.distinct_count < params.max_colors && palette.range > params.min_range) {
        out.decision.stage = Stage::PaletteOverConstant;
        out.decision.background_color = static_cast<double>(palette.modal_value);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (quantize8(values[i]) != palette.modal_value) out.labels[i] = Label::Foreground;
        return out;
    }

    // 4. robust regression
    const RansacOutcome ransac = segment_block_ransac(values, *active, params, rng);
    out.decision.stage = Stage::Ransac;
    out.decision.coeffs = expand_coeffs(ransac.coeffs, kept, design.cols);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!ransac.inlier_mask[i]) out.labels[i] = Label::Foreground;
    return out;
}

SegmentationResult segment_image(const GrayImage& image, const SegParams& params,
                                 int threads) {
    params.validate();
    if (image.empty()) throw std::invalid_argument("cannot segment an empty image");
    if (image.pixels.size() != static_cast<std::size_t>(image.width) * image.height)
        throw std::invalid_argument("pixel buffer does not match the image dimensions");

    const BasisSet basis = eval_basis(params.block_size, params.num_bases);

    SegmentationResult result;
    result.blocks = block_grid(image, params.block_size);
    result.blocks_x = (image.width + params.block_size - 1) / params.block_size;
    result.blocks_y = (image.height + params.block_size - 1) / params.block_size;
    result.mask = LabelMask(image.width, image.height);
    result.decisions.resize(result.blocks.size());
    result.params_used = params;

    const auto process = [&](std::size_t i) {
        const BlockRef& block = result.blocks[i];
        const std::vector<double> values = block_pixels(image, block);
        Matrix restricted;
        const Matrix* design = &basis.matrix;
        if (block.w != basis.n || block.h != basis.n) {
            restricted = restrict_to_block(basis, block);
            design = &restricted;
        }
        Rng rng = block_rng(params.seed, block.block_row, block.block_col);
        BlockSegmentation seg = segment_block(values, *design, params, rng);
        for (int y = 0; y < block.h; ++y) {
            for (int x = 0; x < block.w; ++x) {
                result.mask.labels[result.mask.index(block.x0 + x, block.y0 + y)] =
                    seg.labels[static_cast<std::size_t>(y) * block.w + x];
            }
        }
        result.decisions[i] = std::move(seg.decision);
    };

    int workers = threads;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(result.blocks.size())));

    if (workers == 1) {
        for (std::size_t i = 0; i < result.blocks.size(); ++i) process(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= result.blocks.size() || failed.load()) return;
                    try {
                        process(i);
                    } catch (...) {
                        const std::scoped_lock lock(error_mutex);
                        if (!error) error = std::current_exception();
                        failed.store(true);
                        return;
                    }
                }
            });
        }
        for (auto& worker : pool) worker.join();
        if (error) std::rethrow_exception(error);
    }
    return result;
}

}  // namespace scseg
