// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_LINALG_HPP
#define MAXFEEC_LINALG_HPP

#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "maxfeec/common.hpp"

namespace maxfeec
{

using SparseMatrix = Eigen::SparseMatrix<double>;

// One entry of a block grid: an optional matrix times a scalar.
struct Block
{
  const SparseMatrix *matrix = nullptr;
  double scale = 1.0;
};

using BlockGrid = std::vector<std::vector<Block>>;

// Assemble a block grid into one matrix. Block row heights and column widths are taken
// from the supplied sizes; every present block must match them.
SparseMatrix block_compose(const BlockGrid &blocks, const std::vector<int> &row_sizes,
                           const std::vector<int> &col_sizes);

// Same, with sizes inferred from the present blocks. Each block row and column needs at
// least one present block.
SparseMatrix block_compose(const BlockGrid &blocks);

// Copy out a sub-matrix.
SparseMatrix extract_block(const SparseMatrix &a, int row, int col, int rows, int cols);

// Rows and columns of `a` restricted to the given index lists.
SparseMatrix restrict_matrix(const SparseMatrix &a, const std::vector<int> &rows,
                             const std::vector<int> &cols);

// ||Ax - b||_inf / (||A||_inf ||x||_inf + ||b||_inf).
double relative_residual(const SparseMatrix &a, const Vector &x, const Vector &b);

//
// Sparse LU factorization of a square matrix, computed once and reused. Solves are const
// and may run concurrently with distinct right-hand sides.
//
class Factorization
{
public:
  // Throws InvalidArgument for a non-square matrix, SolverError if it is singular.
  explicit Factorization(const SparseMatrix &a);

  int size() const { return n_; }

  // Throws InvalidArgument on a length mismatch.
  Vector solve(const Vector &b) const;

private:
  int n_ = 0;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace maxfeec

#endif  // MAXFEEC_LINALG_HPP
