#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/cascade.hpp"
#include "scseg/fitting.hpp"
#include "scseg/rng.hpp"
#include "scseg/synth.hpp"

using namespace scseg;

namespace {

// Pastes a block into the canvas at (x0, y0).
void paste(GrayImage& canvas, const GrayImage& block, int x0, int y0) {
    for (int y = 0; y < block.height; ++y)
        for (int x = 0; x < block.width; ++x) canvas.at(x0 + x, y0 + y) = block.at(x, y);
}

SynthBlock smooth_block(const BasisSet& basis, std::uint64_t seed) {
    SynthSpec spec;
    spec.kind = SynthKind::Smooth;
    spec.seed = seed;
    return generate(spec, basis);
}

}  // namespace

TEST_SUITE("cascade") {

TEST_CASE("stddev is the population form") {
    CHECK(stddev(std::vector<double>(30, 77.0)) == 0.0);
    CHECK(stddev(std::vector<double>{0, 0, 255, 255}) == doctest::Approx(127.5).epsilon(1e-12));
    CHECK(stddev(std::vector<double>{10, 12}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("palette_stats") {
    const PaletteStats flat = palette_stats(std::vector<double>(50, 200.0));
    CHECK(flat.distinct_count == 1);
    CHECK(flat.range == 0);
    CHECK(flat.modal_value == 200);
    CHECK(flat.modal_fraction == 1.0);

    std::vector<double> two(100, 255.0);
    for (int i = 0; i < 10; ++i) two[i] = 0.0;
    const PaletteStats stats = palette_stats(two);
    CHECK(stats.distinct_count == 2);
    CHECK(stats.range == 255);
    CHECK(stats.modal_value == 255);
    CHECK(stats.modal_fraction == doctest::Approx(0.9));

    const std::vector<double> uniform{0, 50, 100, 150, 200, 250};
    const PaletteStats tie = palette_stats(uniform);
    CHECK(tie.distinct_count == 6);
    CHECK(tie.range == 250);
    CHECK(tie.modal_value == 0);  // ties break toward the smallest value
}

TEST_CASE("flat block routes to ConstantBlock") {
    const BasisSet basis = eval_basis(64, 10);
    const std::vector<double> f(64 * 64, 40.0);
    SegParams params;
    Rng rng = block_rng(params.seed, 0, 0);
    const BlockSegmentation seg = segment_block(f, basis.matrix, params, rng);
    CHECK(seg.decision.stage == Stage::ConstantBlock);
    CHECK_FALSE(seg.decision.coeffs.has_value());
    CHECK_FALSE(seg.decision.background_color.has_value());
    for (Label l : seg.labels) CHECK(l == Label::Background);
}

TEST_CASE("smooth block routes to SmoothLeastSquares and recovers the model") {
    const BasisSet basis = eval_basis(64, 10);
    const SynthBlock block = smooth_block(basis, 3);
    SegParams params;
    Rng rng = block_rng(params.seed, 0, 0);
    const BlockSegmentation seg = segment_block(block.image.pixels, basis.matrix, params, rng);
    CHECK(seg.decision.stage == Stage::SmoothLeastSquares);
    REQUIRE(seg.decision.coeffs.has_value());
    for (int k = 0; k < 10; ++k)
        CHECK(std::abs((*seg.decision.coeffs)[k] - block.coeffs[k]) < 1e-8);
    for (Label l : seg.labels) CHECK(l == Label::Background);
}

TEST_CASE("two-tone block routes to PaletteOverConstant") {
    const int m = 64 * 64;
    std::vector<double> f(m, 30.0);
    for (int i = 0; i < m / 5; ++i) f[(i * 7) % m] = 220.0;  // ~20% strokes
    SegParams params;
    const BasisSet basis = eval_basis(64, 10);
    Rng rng = block_rng(params.seed, 0, 0);
    const BlockSegmentation seg = segment_block(f, basis.matrix, params, rng);
    CHECK(seg.decision.stage == Stage::PaletteOverConstant);
    REQUIRE(seg.decision.background_color.has_value());
    CHECK(*seg.decision.background_color == 30.0);
    CHECK_FALSE(seg.decision.coeffs.has_value());
    for (int i = 0; i < m; ++i) {
        if (f[i] == 30.0)
            CHECK(seg.labels[i] == Label::Background);
        else
            CHECK(seg.labels[i] == Label::Foreground);
    }
}

TEST_CASE("smooth block with scattered outliers routes to RANSAC") {
    const BasisSet basis = eval_basis(64, 10);
    SynthSpec spec;
    spec.kind = SynthKind::SmoothPlusOutliers;
    spec.outlier_fraction = 0.08;
    spec.outlier_offset = 120.0;
    spec.seed = 21;
    const SynthBlock block = generate(spec, basis);
    // a real-valued smooth ramp quantizes to far more than max_colors values
    CHECK(palette_stats(block.image.pixels).distinct_count >= 10);

    SegParams params;
    Rng rng = block_rng(params.seed, 0, 0);
    const BlockSegmentation seg = segment_block(block.image.pixels, basis.matrix, params, rng);
    CHECK(seg.decision.stage == Stage::Ransac);
    REQUIRE(seg.decision.coeffs.has_value());
    for (std::size_t i = 0; i < seg.labels.size(); ++i) {
        const bool truth_fg = block.truth.labels[i] == Label::Foreground;
        CHECK((seg.labels[i] == Label::Foreground) == truth_fg);
    }
}

TEST_CASE("segment_image on a constant image") {
    const GrayImage image(128, 128, 57.0);
    const SegmentationResult result = segment_image(image, SegParams{});
    CHECK(result.blocks_x == 2);
    CHECK(result.blocks_y == 2);
    REQUIRE(result.decisions.size() == 4);
    for (const BlockDecision& d : result.decisions) CHECK(d.stage == Stage::ConstantBlock);
    CHECK(result.mask.foreground_count() == 0);
}

TEST_CASE("composite image reports one stage per block") {
    const BasisSet basis = eval_basis(64, 10);
    GrayImage image(128, 128, 40.0);  // block (0,0): constant

    paste(image, smooth_block(basis, 5).image, 64, 0);  // block (0,1): smooth

    GrayImage palette(64, 64, 30.0);
    for (int i = 0; i < 64 * 64 / 5; ++i) palette.pixels[(i * 7) % (64 * 64)] = 220.0;
    paste(image, palette, 0, 64);  // block (1,0): palette

    SynthSpec spec;
    spec.kind = SynthKind::SmoothPlusOutliers;
    spec.outlier_fraction = 0.08;
    spec.outlier_offset = 120.0;
    spec.seed = 9;
    paste(image, generate(spec, basis).image, 64, 64);  // block (1,1): ransac

    const SegmentationResult result = segment_image(image, SegParams{});
    REQUIRE(result.decisions.size() == 4);
    CHECK(result.decisions[0].stage == Stage::ConstantBlock);
    CHECK(result.decisions[1].stage == Stage::SmoothLeastSquares);
    CHECK(result.decisions[2].stage == Stage::PaletteOverConstant);
    CHECK(result.decisions[3].stage == Stage::Ransac);
}

TEST_CASE("same input, same params: identical result") {
    const BasisSet basis = eval_basis(64, 10);
    GrayImage image(192, 64, 0.0);
    SynthSpec spec;
    spec.kind = SynthKind::SmoothPlusOutliers;
    spec.outlier_fraction = 0.1;
    for (int b = 0; b < 3; ++b) {
        spec.seed = 40 + b;
        paste(image, generate(spec, basis).image, 64 * b, 0);
    }
    SegParams params;
    params.seed = 4;
    const SegmentationResult a = segment_image(image, params);
    const SegmentationResult b = segment_image(image, params);
    CHECK(a.mask == b.mask);
}

TEST_CASE("serial and parallel runs agree") {
    const BasisSet basis = eval_basis(64, 10);
    GrayImage image(256, 128, 0.0);
    SynthSpec spec;
    spec.kind = SynthKind::SmoothPlusOutliers;
    spec.outlier_fraction = 0.15;
    int i = 0;
    for (int by = 0; by < 2; ++by)
        for (int bx = 0; bx < 4; ++bx) {
            spec.seed = 90 + i++;
            paste(image, generate(spec, basis).image, 64 * bx, 64 * by);
        }
    SegParams params;
    params.seed = 11;
    const SegmentationResult serial = segment_image(image, params, 1);
    const SegmentationResult parallel = segment_image(image, params, 4);
    CHECK(serial.mask == parallel.mask);
}

TEST_CASE("edge and sliver blocks segment without errors") {
    // 65 columns: the right edge is a 1 x 64 sliver whose restricted design
    // is rank-deficient; the reduced-column path must absorb it
    GrayImage image(65, 64);
    Rng rng(77);
    for (double& v : image.pixels) v = rng.range(0.0, 255.0);
    SegParams params;
    const SegmentationResult result = segment_image(image, params);
    CHECK(result.blocks_x == 2);
    CHECK(result.mask.width == 65);
    const SegmentationResult again = segment_image(image, params);
    CHECK(result.mask == again.mask);
}

TEST_CASE("1x1 image") {
    const GrayImage image(1, 1, 9.0);
    const SegmentationResult result = segment_image(image, SegParams{});
    CHECK(result.decisions.size() == 1);
    CHECK(result.decisions[0].stage == Stage::ConstantBlock);
    CHECK(result.mask.foreground_count() == 0);
}

TEST_CASE("decision invariants hold across stages") {
    const BasisSet basis = eval_basis(64, 10);
    GrayImage image(128, 128, 40.0);
    paste(image, smooth_block(basis, 5).image, 64, 0);
    GrayImage palette(64, 64, 30.0);
    for (int i = 0; i < 64 * 64 / 5; ++i) palette.pixels[(i * 7) % (64 * 64)] = 220.0;
    paste(image, palette, 0, 64);
    SynthSpec spec;
    spec.kind = SynthKind::SmoothPlusOutliers;
    spec.seed = 9;
    paste(image, generate(spec, basis).image, 64, 64);

    const SegmentationResult result = segment_image(image, SegParams{});
    for (const BlockDecision& d : result.decisions) {
        const bool has_coeffs = d.coeffs.has_value();
        const bool model_stage =
            d.stage == Stage::SmoothLeastSquares || d.stage == Stage::Ransac;
        CHECK(has_coeffs == model_stage);
        CHECK(d.background_color.has_value() == (d.stage == Stage::PaletteOverConstant));
    }
}

}  // TEST_SUITE
