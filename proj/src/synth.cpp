#include "scseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scseg/fitting.hpp"
#include "scseg/rng.hpp"

namespace scseg {

void SynthSpec::validate() const {
    if (block_side < 1) throw std::invalid_argument("block side must be >= 1");
    if (!(outlier_fraction >= 0.0 && outlier_fraction < 0.5))
        throw std::invalid_argument("outlier_fraction must be in [0, 0.5)");
}

namespace {

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

// Random coefficients whose surface spans exactly [16, 240]. The affine
// rescale stays inside the basis span because the DC column is constant.
std::vector<double> random_scaled_coeffs(const BasisSet& basis, Rng& rng) {
    if (basis.k == 1) return {128.0 * basis.n};  // DC only: a flat 128 block
    for (;;) {
        std::vector<double> alpha(basis.k, 0.0);
        for (int i = 1; i < basis.k; ++i) alpha[i] = rng.range(-1.0, 1.0);
        const std::vector<double> surface = predict(alpha, basis.matrix);
        const auto [lo_it, hi_it] = std::minmax_element(surface.begin(), surface.end());
        if (*hi_it - *lo_it < 1e-9) continue;
        const double scale = (240.0 - 16.0) / (*hi_it - *lo_it);
        const double shift = 16.0 - scale * *lo_it;
        for (double& a : alpha) a *= scale;
        alpha[0] += shift * basis.n;  // DC column is 1/n
        return alpha;
    }
}

// Exactly `count` distinct pixel indices, uniform over [0, m).
std::vector<int> distinct_pixels(int m, int count, Rng& rng) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - i)));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(count);
    return perm;
}

}  // namespace

SynthBlock generate(const SynthSpec& spec, const BasisSet& basis) {
    spec.validate();
    if (basis.n != spec.block_side)
        throw std::invalid_argument("basis frame does not match the spec's block side");

    const int n = spec.block_side;
    const int m = n * n;
    const int target = static_cast<int>(std::floor(spec.outlier_fraction * m));
    Rng rng(spec.seed);

    SynthBlock out;
    out.truth = LabelMask(n, n);

    switch (spec.kind) {
        case SynthKind::Constant: {
            if (spec.coeffs) throw std::invalid_argument("Constant blocks take no coefficients");
            out.image = GrayImage(n, n, spec.base_value);
            out.coeffs.assign(basis.k, 0.0);
            out.coeffs[0] = spec.base_value * n;
            break;
        }
        case SynthKind::Smooth:
        case SynthKind::SmoothPlusOutliers: {
            if (spec.coeffs) {
                if (static_cast<int>(spec.coeffs->size()) != basis.k)
                    throw std::invalid_argument("coefficient count does not match the basis");
                out.coeffs = *spec.coeffs;
            } else {
                out.coeffs = random_scaled_coeffs(basis, rng);
            }
            const std::vector<double> surface = predict(out.coeffs, basis.matrix);
            out.image = GrayImage(n, n);
            for (int i = 0; i < m; ++i) out.image.pixels[i] = clamp255(surface[i]);
            if (spec.kind == SynthKind::SmoothPlusOutliers) {
                for (int px : distinct_pixels(m, target, rng)) {
                    out.image.pixels[px] = clamp255(out.image.pixels[px] + spec.outlier_offset);
                    out.truth.labels[px] = Label::Foreground;
                }
            }
            break;
        }
        case SynthKind::PaletteText: {
            if (spec.coeffs) throw std::invalid_argument("PaletteText blocks take no coefficients");
            out.image = GrayImage(n, n, spec.base_value);
            const double stroke = clamp255(spec.base_value + spec.outlier_offset);
            // short horizontal/vertical strokes until exactly `target` pixels
            // are painted
            int painted = 0;
            while (painted < target) {
                const bool horizontal = rng.below(2) == 0;
                const int len = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                for (int s = 0; s < len && painted < target; ++s) {
                    const int px = horizontal ? x + s : x;
                    const int py = horizontal ? y : y + s;
                    if (px >= n || py >= n) break;
                    const std::size_t idx = out.image.index(px, py);
                    if (out.truth.labels[idx] == Label::Foreground) continue;
                    out.truth.labels[idx] = Label::Foreground;
                    out.image.pixels[idx] = stroke;
                    ++painted;
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace scseg
