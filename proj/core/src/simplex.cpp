// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/simplex.hpp"

#include <array>

namespace maxfeec
{

int binomial(int n, int k)
{
  if (k < 0 || k > n)
  {
    return 0;
  }
  int result = 1;
  for (int i = 1; i <= k; i++)
  {
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace
{

std::vector<std::vector<int>> EnumerateSubsets(int n, int size)
{
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto recurse = [&](auto &&self, int start) -> void
  {
    if (static_cast<int>(current.size()) == size)
    {
      out.push_back(current);
      return;
    }
    for (int i = start; i < n; i++)
    {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace

const std::vector<std::vector<int>> &local_subsimplices(int n_vertices, int size)
{
  // Tables for up to 4 vertices (tetrahedra) are built once.
  static const auto tables = []
  {
    std::array<std::array<std::vector<std::vector<int>>, 5>, 5> t;
    for (int n = 0; n <= 4; n++)
    {
      for (int s = 0; s <= n; s++)
      {
        t[n][s] = EnumerateSubsets(n, s);
      }
    }
    return t;
  }();
  static const std::vector<std::vector<int>> empty;
  if (n_vertices < 0 || n_vertices > 4 || size < 0 || size > n_vertices)
  {
    return empty;
  }
  return tables[n_vertices][size];
}

unsigned subset_mask(const std::vector<int> &subset)
{
  unsigned mask = 0;
  for (int i : subset)
  {
    mask |= 1u << i;
  }
  return mask;
}

}  // namespace maxfeec
