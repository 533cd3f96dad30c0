// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_TEST_MESHES_HPP
#define MAXFEEC_TEST_MESHES_HPP

#include <vector>

#include "maxfeec/mesh.hpp"

namespace maxfeec::testing
{

inline Vec Point(std::initializer_list<double> xs)
{
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs)
  {
    v[i++] = x;
  }
  return v;
}

inline Mesh ReferenceTriangle()
{
  return build_skeleton(2, {Point({0, 0}), Point({1, 0}), Point({0, 1})}, {{0, 1, 2, -1}});
}

inline Mesh ReferenceTet()
{
  return build_skeleton(3, {Point({0, 0, 0}), Point({1, 0, 0}), Point({0, 1, 0}), Point({0, 0, 1})},
                        {{0, 1, 2, 3}});
}

// Same complex with the cell list reversed.
inline Mesh ReversedCells(const Mesh &mesh)
{
  std::vector<SimplexKey> cells;
  for (int c = mesh.num_cells() - 1; c >= 0; c--)
  {
    SimplexKey key{-1, -1, -1, -1};
    const auto t = mesh.cell(c);
    std::copy(t.begin(), t.end(), key.begin());
    cells.push_back(key);
  }
  return build_skeleton(mesh.dim(), mesh.vertices(), cells);
}

}  // namespace maxfeec::testing

#endif  // MAXFEEC_TEST_MESHES_HPP
