// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <utility>

#include "maxfeec/common.hpp"

namespace maxfeec
{

void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
  // Returns {P_n(x), P_n'(x)} by the three-term recurrence.
  auto legendre = [n](double x)
  {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; k++)
    {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; i++)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; it++)
    {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const double dp = legendre(x).second;
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace
{

QuadratureRule BuildRule(int dim, int degree)
{
  QuadratureRule rule;
  rule.dim = dim;
  rule.degree = degree;
  if (dim == 0)
  {
    rule.points = {1.0};
    rule.weights = {1.0};
    return rule;
  }
  if (degree <= 1)
  {
    double volume = 1.0;
    for (int i = 2; i <= dim; i++)
    {
      volume /= i;
    }
    rule.points.assign(dim + 1, 1.0 / (dim + 1));
    rule.weights = {volume};
    return rule;
  }
  // Collapsed coordinates: x1 = u1, x2 = u2 (1 - u1), x3 = u3 (1 - u1)(1 - u2), with
  // Jacobian (1 - u1)^(dim-1) (1 - u2)^(dim-2). Direction j needs exactness for degree
  // `degree + dim - 1 - j`.
  std::array<std::vector<double>, 3> x, w;
  for (int j = 0; j < dim; j++)
  {
    const int exact = degree + dim - 1 - j;
    gauss_legendre(exact / 2 + 1, x[j], w[j]);
  }
  auto push = [&](const std::array<double, 3> &u, double weight)
  {
    std::array<double, 3> c{};
    double scale = 1.0;
    for (int j = 0; j < dim; j++)
    {
      c[j] = u[j] * scale;
      scale *= (1.0 - u[j]);
    }
    double jac = 1.0;
    for (int j = 0; j < dim; j++)
    {
      jac *= std::pow(1.0 - u[j], dim - 1 - j);
    }
    double sum = 0.0;
    for (int j = 0; j < dim; j++)
    {
      sum += c[j];
    }
    rule.points.push_back(1.0 - sum);
    for (int j = 0; j < dim; j++)
    {
      rule.points.push_back(c[j]);
    }
    rule.weights.push_back(weight * jac);
  };
  if (dim == 1)
  {
    for (std::size_t a = 0; a < x[0].size(); a++)
    {
      push({x[0][a], 0.0, 0.0}, w[0][a]);
    }
  }
  else if (dim == 2)
  {
    for (std::size_t a = 0; a < x[0].size(); a++)
    {
      for (std::size_t b = 0; b < x[1].size(); b++)
      {
        push({x[0][a], x[1][b], 0.0}, w[0][a] * w[1][b]);
      }
    }
  }
  else
  {
    for (std::size_t a = 0; a < x[0].size(); a++)
    {
      for (std::size_t b = 0; b < x[1].size(); b++)
      {
        for (std::size_t c = 0; c < x[2].size(); c++)
        {
          push({x[0][a], x[1][b], x[2][c]}, w[0][a] * w[1][b] * w[2][c]);
        }
      }
    }
  }
  return rule;
}

}  // namespace

const QuadratureRule &quadrature_rule(int dim, int degree)
{
  MAXFEEC_VERIFY(dim >= 0 && dim <= 3, "quadrature dimension must be 0..3");
  MAXFEEC_VERIFY(degree >= 0 && degree <= kMaxQuadratureDegree,
                 "requested quadrature degree " + std::to_string(degree) +
                     " is above the implemented table");
  static std::array<std::array<QuadratureRule, kMaxQuadratureDegree + 1>, 4> table;
  static std::array<std::array<std::once_flag, kMaxQuadratureDegree + 1>, 4> flags;
  std::call_once(flags[dim][degree], [&] { table[dim][degree] = BuildRule(dim, degree); });
  return table[dim][degree];
}

}  // namespace maxfeec
