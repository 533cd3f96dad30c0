// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/linalg.hpp"

#include <string>

namespace maxfeec
{

SparseMatrix block_compose(const BlockGrid &blocks, const std::vector<int> &row_sizes,
                           const std::vector<int> &col_sizes)
{
  MAXFEEC_VERIFY(blocks.size() == row_sizes.size(), "block grid row count mismatch");
  std::vector<int> row_off(row_sizes.size() + 1, 0), col_off(col_sizes.size() + 1, 0);
  for (std::size_t i = 0; i < row_sizes.size(); i++)
  {
    row_off[i + 1] = row_off[i] + row_sizes[i];
  }
  for (std::size_t j = 0; j < col_sizes.size(); j++)
  {
    col_off[j + 1] = col_off[j] + col_sizes[j];
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < blocks.size(); i++)
  {
    MAXFEEC_VERIFY(blocks[i].size() == col_sizes.size(), "block grid column count mismatch");
    for (std::size_t j = 0; j < blocks[i].size(); j++)
    {
      const Block &b = blocks[i][j];
      if (!b.matrix)
      {
        continue;
      }
      MAXFEEC_VERIFY(b.matrix->rows() == row_sizes[i] && b.matrix->cols() == col_sizes[j],
                     "block (" + std::to_string(i) + "," + std::to_string(j) +
                         ") has inconsistent dimensions");
      for (int c = 0; c < b.matrix->outerSize(); c++)
      {
        for (SparseMatrix::InnerIterator it(*b.matrix, c); it; ++it)
        {
          trip.emplace_back(row_off[i] + it.row(), col_off[j] + it.col(), b.scale * it.value());
        }
      }
    }
  }
  SparseMatrix out(row_off.back(), col_off.back());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix block_compose(const BlockGrid &blocks)
{
  MAXFEEC_VERIFY(!blocks.empty(), "empty block grid");
  const std::size_t nr = blocks.size(), nc = blocks[0].size();
  std::vector<int> rows(nr, -1), cols(nc, -1);
  for (std::size_t i = 0; i < nr; i++)
  {
    MAXFEEC_VERIFY(blocks[i].size() == nc, "ragged block grid");
    for (std::size_t j = 0; j < nc; j++)
    {
      if (const SparseMatrix *m = blocks[i][j].matrix)
      {
        MAXFEEC_VERIFY(rows[i] < 0 || rows[i] == m->rows(), "block row heights disagree");
        MAXFEEC_VERIFY(cols[j] < 0 || cols[j] == m->cols(), "block column widths disagree");
        rows[i] = static_cast<int>(m->rows());
        cols[j] = static_cast<int>(m->cols());
      }
    }
  }
  for (int s : rows)
  {
    MAXFEEC_VERIFY(s >= 0, "block row without any block");
  }
  for (int s : cols)
  {
    MAXFEEC_VERIFY(s >= 0, "block column without any block");
  }
  return block_compose(blocks, rows, cols);
}

SparseMatrix extract_block(const SparseMatrix &a, int row, int col, int rows, int cols)
{
  MAXFEEC_VERIFY(row >= 0 && col >= 0 && row + rows <= a.rows() && col + cols <= a.cols(),
                 "block extends outside the matrix");
  return a.block(row, col, rows, cols);
}

SparseMatrix restrict_matrix(const SparseMatrix &a, const std::vector<int> &rows,
                             const std::vector<int> &cols)
{
  std::vector<int> row_map(a.rows(), -1), col_map(a.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    row_map[rows[i]] = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < cols.size(); j++)
  {
    col_map[cols[j]] = static_cast<int>(j);
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < a.outerSize(); c++)
  {
    if (col_map[c] < 0)
    {
      continue;
    }
    for (SparseMatrix::InnerIterator it(a, c); it; ++it)
    {
      if (row_map[it.row()] >= 0)
      {
        trip.emplace_back(row_map[it.row()], col_map[c], it.value());
      }
    }
  }
  SparseMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

double relative_residual(const SparseMatrix &a, const Vector &x, const Vector &b)
{
  Vector row_abs = Vector::Zero(a.rows());
  for (int c = 0; c < a.outerSize(); c++)
  {
    for (SparseMatrix::InnerIterator it(a, c); it; ++it)
    {
      row_abs[it.row()] += std::abs(it.value());
    }
  }
  const double norm_a = row_abs.size() ? row_abs.maxCoeff() : 0.0;
  const double denom = norm_a * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>();
  const double res = (a * x - b).lpNorm<Eigen::Infinity>();
  return denom > 0.0 ? res / denom : res;
}

Factorization::Factorization(const SparseMatrix &a) : n_(static_cast<int>(a.rows()))
{
  MAXFEEC_VERIFY(a.rows() == a.cols(), "factorization needs a square matrix");
  SparseMatrix compressed = a;
  compressed.makeCompressed();
  lu_.analyzePattern(compressed);
  lu_.factorize(compressed);
  if (lu_.info() != Eigen::Success)
  {
    throw SolverError("sparse LU factorization failed: matrix is singular (" +
                      lu_.lastErrorMessage() + ")");
  }
}

Vector Factorization::solve(const Vector &b) const
{
  MAXFEEC_VERIFY(b.size() == n_, "right-hand side length does not match the factorization");
  if (n_ == 0)
  {
    return Vector();
  }
  Vector x = lu_.solve(b);
  return x;
}

}  // namespace maxfeec
