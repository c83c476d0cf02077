#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "scseg/image.hpp"
#include "scseg/rng.hpp"

using namespace scseg;

TEST_SUITE("image") {

TEST_CASE("block_grid tiles exactly") {
    const GrayImage img128(128, 128);
    auto blocks = block_grid(img128, 64);
    REQUIRE(blocks.size() == 4);
    for (const BlockRef& b : blocks) {
        CHECK(b.w == 64);
        CHECK(b.h == 64);
    }

    const GrayImage img100(100, 64);
    blocks = block_grid(img100, 64);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].x0 == 0);
    CHECK(blocks[0].w == 64);
    CHECK(blocks[0].h == 64);
    CHECK(blocks[1].x0 == 64);
    CHECK(blocks[1].y0 == 0);
    CHECK(blocks[1].w == 36);
    CHECK(blocks[1].h == 64);

    const GrayImage img64(64, 64);
    blocks = block_grid(img64, 64);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].w == 64);
    CHECK(blocks[0].h == 64);
}

TEST_CASE("block_grid covers every pixel exactly once") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(200));
        const int h = 1 + static_cast<int>(rng.below(200));
        const int n = 1 + static_cast<int>(rng.below(80));
        const GrayImage img(w, h);
        std::vector<int> covered(static_cast<std::size_t>(w) * h, 0);
        std::size_t area = 0;
        for (const BlockRef& b : block_grid(img, n)) {
            CHECK(b.w >= 1);
            CHECK(b.h >= 1);
            CHECK(b.x0 + b.w <= w);
            CHECK(b.y0 + b.h <= h);
            area += static_cast<std::size_t>(b.w) * b.h;
            for (int y = b.y0; y < b.y0 + b.h; ++y)
                for (int x = b.x0; x < b.x0 + b.w; ++x) ++covered[img.index(x, y)];
        }
        CHECK(area == static_cast<std::size_t>(w) * h);
        for (int c : covered) REQUIRE(c == 1);
    }
}

TEST_CASE("to_grayscale uses BT.601 weights") {
    const std::vector<double> r{255, 0, 255};
    const std::vector<double> g{255, 0, 0};
    const std::vector<double> b{255, 0, 0};
    const GrayImage gray = to_grayscale(3, 1, r, g, b);
    CHECK(gray.pixels[0] == 255.0);
    CHECK(gray.pixels[1] == 0.0);
    CHECK(gray.pixels[2] == 76.0);  // round(0.299 * 255)
}

TEST_CASE("to_grayscale stays within [0, 255] for 8-bit inputs") {
    Rng rng(7);
    std::vector<double> r(64), g(64), b(64);
    for (int i = 0; i < 64; ++i) {
        r[i] = static_cast<double>(rng.below(256));
        g[i] = static_cast<double>(rng.below(256));
        b[i] = static_cast<double>(rng.below(256));
    }
    const GrayImage gray = to_grayscale(8, 8, r, g, b);
    for (double v : gray.pixels) {
        CHECK(v >= 0.0);
        CHECK(v <= 255.0);
        CHECK(v == static_cast<double>(static_cast<int>(v)));  // integral
    }
}

TEST_CASE("to_grayscale rejects mismatched channels") {
    const std::vector<double> r(4), g(4), b(3);
    CHECK_THROWS_AS(to_grayscale(2, 2, r, g, b), std::invalid_argument);
}

TEST_CASE("defaults match the reference configuration") {
    const SegParams p;
    CHECK(p.block_size == 64);
    CHECK(p.num_bases == 10);
    CHECK(p.inlier_tol == 10.0);
    CHECK(p.max_iters == 200);
    CHECK(p.const_std_tol == 3.0);
    CHECK(p.max_colors == 10);
    CHECK(p.min_range == 50.0);
    CHECK(p.consensus_frac == 0.95);
    CHECK(p.seed == 0);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("parameter validation") {
    SegParams p;
    p.num_bases = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = SegParams{};
    p.block_size = 2;
    p.num_bases = 5;  // > N^2
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = SegParams{};
    p.consensus_frac = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = SegParams{};
    p.inlier_tol = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("block_pixels is row-major within the block frame") {
    GrayImage img(4, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 4; ++x) img.at(x, y) = 10.0 * y + x;
    const BlockRef block{0, 1, 2, 1, 2, 2};  // 2x2 block at (2, 1)
    const std::vector<double> vals = block_pixels(img, block);
    CHECK(vals == std::vector<double>{12, 13, 22, 23});
}

TEST_CASE("constructors reject degenerate dimensions") {
    CHECK_THROWS_AS(GrayImage(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(LabelMask(4, 0), std::invalid_argument);
}

}  // TEST_SUITE
