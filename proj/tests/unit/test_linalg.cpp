// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "maxfeec/linalg.hpp"

using namespace maxfeec;

namespace
{

SparseMatrix Identity(int n)
{
  SparseMatrix i(n, n);
  i.setIdentity();
  return i;
}

SparseMatrix RandomSparse(int rows, int cols, std::mt19937 &gen, double fill = 0.3)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(fill);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < rows; i++)
  {
    for (int j = 0; j < cols; j++)
    {
      if (keep(gen))
      {
        t.emplace_back(i, j, u(gen));
      }
    }
  }
  SparseMatrix a(rows, cols);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

TEST(Linalg, IdentityBlocksComposeToIdentity)
{
  const SparseMatrix a = Identity(3), b = Identity(4), c = Identity(2);
  const SparseMatrix m = block_compose({{{&a}, {}, {}}, {{}, {&b}, {}}, {{}, {}, {&c}}});
  EXPECT_EQ(m.rows(), 9);
  EXPECT_EQ(Eigen::MatrixXd(m), Eigen::MatrixXd::Identity(9, 9));
}

TEST(Linalg, ComposeThenExtract)
{
  std::mt19937 gen(1);
  const SparseMatrix a = RandomSparse(3, 3, gen), b = RandomSparse(3, 5, gen),
                     c = RandomSparse(5, 3, gen), d = RandomSparse(5, 5, gen);
  const SparseMatrix m = block_compose({{{&a}, {&b, 2.0}}, {{&c, -0.5}, {&d}}});
  EXPECT_EQ(Eigen::MatrixXd(extract_block(m, 0, 0, 3, 3)), Eigen::MatrixXd(a));
  EXPECT_EQ(Eigen::MatrixXd(extract_block(m, 0, 3, 3, 5)), Eigen::MatrixXd(2.0 * b));
  EXPECT_EQ(Eigen::MatrixXd(extract_block(m, 3, 0, 5, 3)), Eigen::MatrixXd(-0.5 * c));
  EXPECT_EQ(Eigen::MatrixXd(extract_block(m, 3, 3, 5, 5)), Eigen::MatrixXd(d));
}

TEST(Linalg, ComposeRejectsMismatchedBlocks)
{
  const SparseMatrix a = Identity(3), b = Identity(4);
  EXPECT_THROW(block_compose({{{&a}, {&b}}}), InvalidArgument);
  EXPECT_THROW(block_compose({{{&a}, {}}, {{}, {}}}), InvalidArgument);
  EXPECT_THROW(block_compose({{{&a}}}, {4}, {3}), InvalidArgument);
  // Explicit sizes allow an empty block row.
  const SparseMatrix m = block_compose({{{&a}, {}}, {{}, {}}}, {3, 2}, {3, 1});
  EXPECT_EQ(m.rows(), 5);
  EXPECT_EQ(m.cols(), 4);
}

TEST(Linalg, RestrictMatchesDenseSelection)
{
  std::mt19937 gen(2);
  const SparseMatrix a = RandomSparse(6, 6, gen, 0.6);
  const std::vector<int> rows{0, 2, 5}, cols{1, 4};
  const Eigen::MatrixXd r(restrict_matrix(a, rows, cols));
  const Eigen::MatrixXd dense(a);
  for (int i = 0; i < 3; i++)
  {
    for (int j = 0; j < 2; j++)
    {
      EXPECT_EQ(r(i, j), dense(rows[i], cols[j]));
    }
  }
}

TEST(Linalg, TransposeAndScale)
{
  std::mt19937 gen(3);
  const SparseMatrix a = RandomSparse(7, 4, gen);
  const SparseMatrix att = SparseMatrix(a.transpose()).transpose();
  EXPECT_EQ(Eigen::MatrixXd(att), Eigen::MatrixXd(a));
  const Vector x = Vector::Random(4);
  EXPECT_LE(((2.5 * a) * x - 2.5 * (a * x)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Linalg, IdentitySolve)
{
  const Factorization f(Identity(5));
  const Vector b = Vector::LinSpaced(5, -1.0, 3.0);
  EXPECT_EQ(f.solve(b), b);
}

TEST(Linalg, MatchesDenseOracleOnSpdSystem)
{
  std::mt19937 gen(4);
  const SparseMatrix r = RandomSparse(12, 12, gen, 0.4);
  const SparseMatrix a = SparseMatrix(r.transpose() * r) + 12.0 * Identity(12);
  const Vector b = Vector::Random(12);
  const Vector x = Factorization(a).solve(b);
  const Vector oracle = Eigen::MatrixXd(a).partialPivLu().solve(b);
  EXPECT_LE((x - oracle).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(relative_residual(a, x, b), 1e-14);
}

TEST(Linalg, NonsymmetricSystemResidual)
{
  std::mt19937 gen(5);
  const SparseMatrix a = RandomSparse(40, 40, gen, 0.1) + 4.0 * Identity(40);
  const Vector b = Vector::Random(40);
  const Factorization f(a);
  const Vector x = f.solve(b);
  EXPECT_LE(relative_residual(a, x, b), 1e-10);
  // Repeated solves are bitwise identical.
  EXPECT_EQ(f.solve(b), x);
}

TEST(Linalg, SingularAndShapeErrorsAreDistinct)
{
  SparseMatrix singular(3, 3);
  singular.insert(0, 0) = 1.0;
  singular.insert(1, 1) = 1.0;
  EXPECT_THROW(Factorization{singular}, SolverError);
  EXPECT_THROW(Factorization{SparseMatrix(3, 4)}, InvalidArgument);
  const Factorization f(Identity(3));
  EXPECT_THROW(f.solve(Vector::Zero(4)), InvalidArgument);
}
