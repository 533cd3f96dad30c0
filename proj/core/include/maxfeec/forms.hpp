// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_FORMS_HPP
#define MAXFEEC_FORMS_HPP

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "maxfeec/common.hpp"

namespace maxfeec
{

//
// Polynomial differential forms written in barycentric coordinates of a simplex:
//
//   omega = sum_t  coef_t * lambda^power_t * d lambda_{i_1} ^ ... ^ d lambda_{i_k},
//
// with the wedge indices i_1 < ... < i_k stored as a bitmask. The representation is
// affine invariant, so the same coefficients describe a form on the reference simplex
// and on any physical simplex; only the gradients of the barycentric coordinates
// change. Not unique (sum lambda = 1, sum d lambda = 0); all operations below are
// exact regardless.
//
struct BaryTerm
{
  double coef = 0.0;
  std::array<int, 4> power{};
  unsigned wedge = 0;
};

class BaryForm
{
public:
  BaryForm() = default;
  BaryForm(int n_bary, int degree) : n_bary_(n_bary), degree_(degree) {}

  int n_bary() const { return n_bary_; }
  int degree() const { return degree_; }
  const std::vector<BaryTerm> &terms() const { return terms_; }

  void add(double coef, const std::array<int, 4> &power, unsigned wedge);
  void add(const BaryForm &other, double scale = 1.0);

  // Exterior derivative.
  BaryForm d() const;

  // Wedge product; both forms must live on the same simplex.
  BaryForm wedge(const BaryForm &other) const;

  // Re-express a form given on a sub-simplex (indices 0..m) in the barycentric
  // coordinates of an enclosing simplex, where `vertices` lists the enclosing indices.
  BaryForm embed(int n_bary, std::span<const int> vertices) const;

  // Integral over the sub-simplex spanned by the ascending vertex list `face`, oriented
  // by vertex order. The form degree must equal face.size() - 1. Exact.
  double integrate(std::span<const int> face) const;

  // Merge equal (power, wedge) terms and drop coefficients below `tol`.
  void compress(double tol = 0.0);

  // Scalar factor lambda^power at barycentric point `bary`.
  static double monomial(const std::array<int, 4> &power, std::span<const double> bary);

private:
  int n_bary_ = 0;
  int degree_ = 0;
  std::vector<BaryTerm> terms_;
};

// Sign of the permutation that sorts the concatenation of two disjoint ascending index
// sets given as bitmasks.
int wedge_sign(unsigned a, unsigned b);

// Number of components of the proxy field of a k-form in `dim` dimensions: 1 for k = 0
// and k = dim, dim otherwise.
int proxy_size(int dim, int k);

// Proxy of d lambda_{i_1} ^ ... ^ d lambda_{i_k} for the wedge mask, given the rows of
// barycentric gradients (n_bary x dim). 2D: k=1 vector, k=2 scalar (dx^dy coefficient).
// 3D: k=1 vector, k=2 vector (dy^dz, dz^dx, dx^dy coefficients), k=3 scalar.
Vec wedge_proxy(unsigned wedge, const Eigen::MatrixXd &grads);

// Evaluate a form proxy at a barycentric point.
Vec evaluate(const BaryForm &form, std::span<const double> bary, const Eigen::MatrixXd &grads,
             int dim);

// Value of a k-form (given by its proxy in `dim` dimensions) on k tangent vectors.
double evaluate_on_vectors(const Vec &proxy, int dim, int k, std::span<const Vec> vectors);

// Barycentric gradients of the simplex with the given vertices ((dim+1) x dim).
Eigen::MatrixXd barycentric_gradients(std::span<const Vec> vertices);

}  // namespace maxfeec

#endif  // MAXFEEC_FORMS_HPP
