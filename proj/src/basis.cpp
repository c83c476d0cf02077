#include "scseg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scseg {

std::vector<std::pair<int, int>> zigzag_order(int count, int grid) {
    if (count < 1) throw std::invalid_argument("zigzag count must be >= 1");
    if (grid < 1 || count > grid * grid)
        throw std::invalid_argument("zigzag count exceeds the grid capacity");
    std::vector<std::pair<int, int>> order;
    order.reserve(count);
    for (int s = 0; s <= 2 * (grid - 1) && static_cast<int>(order.size()) < count; ++s) {
        const int lo = std::max(0, s - (grid - 1));
        const int hi = std::min(s, grid - 1);
        if (s % 2 == 1) {
            // odd anti-diagonal: u ascends, so (0,1) precedes (1,0)
            for (int u = lo; u <= hi && static_cast<int>(order.size()) < count; ++u)
                order.emplace_back(u, s - u);
        } else {
            for (int u = hi; u >= lo && static_cast<int>(order.size()) < count; --u)
                order.emplace_back(u, s - u);
        }
    }
    return order;
}

std::vector<std::pair<int, int>> zigzag_order(int count) {
    // a count x count grid always contains the first `count` entries of the
    // unbounded traversal
    return zigzag_order(count, count);
}

BasisSet eval_basis(int block_side, int num_bases) {
    if (block_side < 1) throw std::invalid_argument("block side must be >= 1");
    if (num_bases < 1 || num_bases > block_side * block_side)
        throw std::invalid_argument("basis count must be in [1, N^2]");

    BasisSet basis;
    basis.n = block_side;
    basis.k = num_bases;
    basis.order = zigzag_order(num_bases, block_side);
    basis.matrix = Matrix(block_side * block_side, num_bases);

    const double n = block_side;
    const double beta_dc = std::sqrt(1.0 / n);
    const double beta_ac = std::sqrt(2.0 / n);
    for (int k = 0; k < num_bases; ++k) {
        const auto [u, v] = basis.order[k];
        const double scale = (u == 0 ? beta_dc : beta_ac) * (v == 0 ? beta_dc : beta_ac);
        for (int y = 0; y < block_side; ++y) {
            const double cy = std::cos((2 * y + 1) * v * std::numbers::pi / (2.0 * n));
            for (int x = 0; x < block_side; ++x) {
                const double cx = std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * n));
                basis.matrix(y * block_side + x, k) = scale * cx * cy;
            }
        }
    }
    return basis;
}

Matrix restrict_to_block(const BasisSet& basis, const BlockRef& block) {
    if (block.w < 1 || block.h < 1) throw std::invalid_argument("block extent must be >= 1");
    if (block.w > basis.n || block.h > basis.n)
        throw std::invalid_argument("block larger than the basis frame");
    if (block.w == basis.n && block.h == basis.n) return basis.matrix;

    Matrix out(block.w * block.h, basis.k);
    for (int y = 0; y < block.h; ++y) {
        for (int x = 0; x < block.w; ++x) {
            std::copy_n(basis.matrix.data.data() +
                            static_cast<std::size_t>(y * basis.n + x) * basis.k,
                        basis.k,
                        out.data.data() + static_cast<std::size_t>(y * block.w + x) * basis.k);
        }
    }
    return out;
}

}  // namespace scseg
