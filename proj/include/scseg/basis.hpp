#pragma once

#include <utility>
#include <vector>

#include "scseg/image.hpp"
#include "scseg/matrix.hpp"

namespace scseg {

// The first K two-dimensional DCT basis functions in zigzag frequency order,
// sampled over an N x N block. Column k holds the vectorized basis
//
//   P_{u,v}(x, y) = beta_u beta_v cos((2x+1) pi u / 2N) cos((2y+1) pi v / 2N)
//
// with beta_0 = sqrt(1/N) and beta_{u>0} = sqrt(2/N), which makes the columns
// orthonormal. Row index = y * n + x. The set is built once per (N, K) and
// shared read-only across blocks.
struct BasisSet {
    int n = 0;
    int k = 0;
    std::vector<std::pair<int, int>> order;  // (u, v) frequency of each column
    Matrix matrix;                           // N^2 x K
};

// First `count` (u, v) pairs of the JPEG-style zigzag traversal of the
// frequency plane: starts at DC, steps to (0,1) first, then walks
// anti-diagonals alternately. The single-argument form traverses the open
// quarter-plane; the two-argument form stays inside a grid x grid square
// (needed when count approaches grid^2).
std::vector<std::pair<int, int>> zigzag_order(int count);
std::vector<std::pair<int, int>> zigzag_order(int count, int grid);

BasisSet eval_basis(int block_side, int num_bases);

// Rows of the basis matrix covering the w x h top-left region of the block
// frame, in row-major order. Edge blocks smaller than N x N reuse the same
// basis restricted to their valid region.
Matrix restrict_to_block(const BasisSet& basis, const BlockRef& block);

}  // namespace scseg
