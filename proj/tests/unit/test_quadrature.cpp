// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "maxfeec/quadrature.hpp"

using namespace maxfeec;

namespace
{

double Factorial(int n)
{
  return std::tgamma(n + 1.0);
}

// Exact moment on the reference m-simplex: int lambda^beta = beta! / (|beta| + m)!.
double ExactMoment(const std::vector<int> &beta, int m)
{
  double num = 1.0;
  int total = 0;
  for (int b : beta)
  {
    num *= Factorial(b);
    total += b;
  }
  return num / Factorial(total + m);
}

void CheckExactness(int dim, int degree)
{
  const QuadratureRule &rule = quadrature_rule(dim, degree);
  std::vector<int> beta(dim + 1, 0);
  auto recurse = [&](auto &&self, int pos, int left) -> void
  {
    if (pos == dim)
    {
      beta[pos] = left;
      double sum = 0.0;
      for (int q = 0; q < rule.size(); q++)
      {
        double v = 1.0;
        for (int j = 0; j <= dim; j++)
        {
          v *= std::pow(rule.point(q)[j], beta[j]);
        }
        sum += rule.weights[q] * v;
      }
      EXPECT_NEAR(sum, ExactMoment(beta, dim), 1e-13)
          << "dim " << dim << " degree " << degree;
      return;
    }
    for (int b = 0; b <= left; b++)
    {
      beta[pos] = b;
      self(self, pos + 1, left - b);
    }
  };
  for (int total = 0; total <= degree; total++)
  {
    recurse(recurse, 0, total);
  }
}

}  // namespace

TEST(Quadrature, CentroidRule)
{
  const QuadratureRule &rule = quadrature_rule(2, 1);
  ASSERT_EQ(rule.size(), 1);
  EXPECT_DOUBLE_EQ(rule.weights[0], 0.5);
  for (int j = 0; j < 3; j++)
  {
    EXPECT_DOUBLE_EQ(rule.point(0)[j], 1.0 / 3.0);
  }
}

TEST(Quadrature, ExactOnMonomials)
{
  for (int dim = 1; dim <= 3; dim++)
  {
    for (int degree = 0; degree <= 10; degree++)
    {
      CheckExactness(dim, degree);
    }
  }
}

TEST(Quadrature, BarycentricProductMoment)
{
  // int over the reference triangle of lambda_1 lambda_2 = 2 |T| 1! 1! / 4! = 1/24.
  for (int degree = 2; degree <= 8; degree++)
  {
    const QuadratureRule &rule = quadrature_rule(2, degree);
    double sum = 0.0;
    for (int q = 0; q < rule.size(); q++)
    {
      sum += rule.weights[q] * rule.point(q)[1] * rule.point(q)[2];
    }
    EXPECT_NEAR(sum, 1.0 / 24.0, 1e-15);
  }
}

TEST(Quadrature, WeightsSumToVolume)
{
  for (int degree = 0; degree <= 8; degree++)
  {
    double tet = 0.0;
    for (double w : quadrature_rule(3, degree).weights)
    {
      tet += w;
      EXPECT_GT(w, 0.0);
    }
    EXPECT_NEAR(tet, 1.0 / 6.0, 1e-15);
  }
}

TEST(Quadrature, DegreeAboveTableRejected)
{
  EXPECT_THROW(quadrature_rule(2, kMaxQuadratureDegree + 1), std::invalid_argument);
  EXPECT_THROW(quadrature_rule(4, 2), std::invalid_argument);
}
