// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_QUADRATURE_HPP
#define MAXFEEC_QUADRATURE_HPP

#include <span>
#include <vector>

namespace maxfeec
{

//
// Quadrature on the reference m-simplex (m = 0..3) with barycentric points. Weights
// sum to the reference volume 1/m!. Degrees 0 and 1 use the centroid; higher degrees
// use collapsed (Duffy) tensor Gauss-Legendre rules, which have positive weights.
//
struct QuadratureRule
{
  int dim = 0;
  int degree = 0;
  std::vector<double> points;  // npoints x (dim + 1), row-major barycentric coordinates
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
  std::span<const double> point(int q) const
  {
    return {points.data() + q * (dim + 1), std::size_t(dim + 1)};
  }
};

inline constexpr int kMaxQuadratureDegree = 30;

// Throws InvalidArgument for dim outside 0..3 or degree outside 0..kMaxQuadratureDegree.
const QuadratureRule &quadrature_rule(int dim, int degree);

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

}  // namespace maxfeec

#endif  // MAXFEEC_QUADRATURE_HPP
