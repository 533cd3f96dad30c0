// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_SIMPLEX_HPP
#define MAXFEEC_SIMPLEX_HPP

#include <vector>

namespace maxfeec
{

// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
int binomial(int n, int k);

// All subsets of {0, ..., n_vertices - 1} with `size` elements, each ascending, listed in
// lexicographic order. This fixes the local numbering of the sub-simplices of a cell:
// for a triangle the edges are (0,1), (0,2), (1,2).
const std::vector<std::vector<int>> &local_subsimplices(int n_vertices, int size);

// Bitmask of a vertex subset.
unsigned subset_mask(const std::vector<int> &subset);

}  // namespace maxfeec

#endif  // MAXFEEC_SIMPLEX_HPP
