#include "scseg/reconstruct.hpp"

#include <algorithm>
#include <stdexcept>

#include "scseg/fitting.hpp"

namespace scseg {

GrayImage fill_background(const GrayImage& image, const SegmentationResult& result,
                          const BasisSet& basis) {
    if (result.mask.width != image.width || result.mask.height != image.height)
        throw std::invalid_argument("segmentation does not match the image");

    GrayImage filled = image;
    for (const BlockRef& block : result.blocks) {
        std::vector<int> bg_rows, fg_rows;  // row indices within the block frame
        for (int y = 0; y < block.h; ++y) {
            for (int x = 0; x < block.w; ++x) {
                const int local = y * block.w + x;
                if (result.mask.at(block.x0 + x, block.y0 + y) == Label::Background)
                    bg_rows.push_back(local);
                else
                    fg_rows.push_back(local);
            }
        }
        if (fg_rows.empty()) continue;

        const std::vector<double> values = block_pixels(image, block);
        Matrix restricted;
        const Matrix* design = &basis.matrix;
        if (block.w != basis.n || block.h != basis.n) {
            restricted = restrict_to_block(basis, block);
            design = &restricted;
        }

        std::vector<double> coeffs;
        bool have_model = false;
        if (static_cast<int>(bg_rows.size()) >= basis.k) {
            std::vector<double> bg_values(bg_rows.size());
            for (std::size_t i = 0; i < bg_rows.size(); ++i) bg_values[i] = values[bg_rows[i]];
            const Matrix bg_design = select_rows(*design, bg_rows);
            try {
                coeffs = fit_least_squares(bg_values, bg_design).coeffs;
            } catch (const RankDeficientError&) {
                coeffs = fit_least_squares_reduced(bg_values, bg_design).coeffs;
            }
            have_model = true;
        }

        double flat = 0.0;
        if (!have_model) {
            // too few background pixels for a K-term model: fall back to the
            // background mean, or the block mean when nothing is background
            double sum = 0.0;
            if (bg_rows.empty()) {
                for (double v : values) sum += v;
                flat = sum / static_cast<double>(values.size());
            } else {
                for (int r : bg_rows) sum += values[r];
                flat = sum / static_cast<double>(bg_rows.size());
            }
        }

        for (int r : fg_rows) {
            double v = flat;
            if (have_model) {
                const double* row = design->data.data() +
                                    static_cast<std::size_t>(r) * design->cols;
                v = 0.0;
                for (int c = 0; c < design->cols; ++c) v += row[c] * coeffs[c];
            }
            const int x = r % block.w;
            const int y = r / block.w;
            filled.at(block.x0 + x, block.y0 + y) = std::clamp(v, 0.0, 255.0);
        }
    }
    return filled;
}

}  // namespace scseg
