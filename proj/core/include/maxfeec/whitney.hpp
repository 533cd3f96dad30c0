// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_WHITNEY_HPP
#define MAXFEEC_WHITNEY_HPP

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "maxfeec/common.hpp"
#include "maxfeec/forms.hpp"
#include "maxfeec/quadrature.hpp"

namespace maxfeec
{

// A degree of freedom of P_r^- Lambda^k: the moment of the trace on a local sub-simplex
// against a weight form,
//
//   phi  ->  int_f  tr_f(phi) ^ weight,
//
// with the weight written in the barycentric coordinates of f itself (indices 0..m).
// Moments use only the sub-simplex and its vertex order, so neighbouring cells agree on
// them.
struct DofDescriptor
{
  int sub_dim = 0;    // m = dim f, k <= m <= dim
  int sub_local = 0;  // index into local_subsimplices(dim + 1, m + 1)
  int moment = 0;     // index of the weight among the moments on f
  BaryForm weight;    // in P_{r+k-m-1} Lambda^{m-k}(f)
};

//
// Reference-element basis of the trimmed space P_r^- Lambda^k on a dim-simplex, dual to
// the trace moments. Built from the geometric-decomposition spanning set
// { lambda^alpha phi_sigma } by inverting the moment matrix.
//
class LocalBasis
{
public:
  int dim() const { return dim_; }
  int k() const { return k_; }
  int r() const { return r_; }
  int size() const { return static_cast<int>(functions_.size()); }

  const BaryForm &function(int i) const { return functions_.at(i); }
  const BaryForm &derivative(int i) const { return derivatives_.at(i); }
  const std::vector<DofDescriptor> &dofs() const { return dofs_; }
  const std::vector<BaryForm> &generators() const { return generators_; }

  // Number of moments carried by each sub-simplex of dimension m.
  int dofs_per_subsimplex(int m) const { return per_sub_.at(m); }

  // Apply the i-th moment to a barycentric form of degree k on this simplex (exact).
  double apply_dof(int i, const BaryForm &form) const;

  // Proxy of basis function i at barycentric point x on the reference simplex.
  Vec eval(int i, std::span<const double> bary) const;

  // Proxy on a physical simplex with the given barycentric gradients.
  Vec eval(int i, std::span<const double> bary, const Eigen::MatrixXd &grads) const;

private:
  friend const LocalBasis &reference_basis(int, int, int);
  LocalBasis() = default;

  int dim_ = 0, k_ = 0, r_ = 0;
  std::vector<BaryForm> generators_;
  std::vector<BaryForm> functions_;
  std::vector<BaryForm> derivatives_;
  std::vector<DofDescriptor> dofs_;
  std::vector<int> per_sub_;
};

// Dimension of P_r^- Lambda^k on a dim-simplex: C(r+k-1, k) C(dim+r, dim-k).
int trimmed_dimension(int dim, int k, int r);

// Cached, immutable basis for dim in {2,3}, 0 <= k <= dim, r in {1,2}.
const LocalBasis &reference_basis(int dim, int k, int r);

// Matrix D (size_{k+1} x size_k) with d(phi^k_i) = sum_j D(j,i) phi^{k+1}_j.
Eigen::MatrixXd local_exterior_derivative(int dim, int k, int r);

// Barycentric gradients of the reference simplex (origin and unit vectors).
Eigen::MatrixXd reference_gradients(int dim);

//
// Basis values at the points of a quadrature rule, split by wedge monomial so that the
// physical proxy on a cell is sum_m value(q, i, m) * wedge_proxy(mask(m), grads).
//
class Tabulation
{
public:
  Tabulation(const LocalBasis &basis, const QuadratureRule &rule, bool derivative = false);

  int form_degree() const { return degree_; }
  int num_points() const { return npoints_; }
  int num_functions() const { return nfunc_; }
  const std::vector<unsigned> &masks() const { return masks_; }
  double value(int q, int i, int m) const
  {
    return values_[(q * nfunc_ + i) * masks_.size() + m];
  }

private:
  int degree_ = 0, npoints_ = 0, nfunc_ = 0;
  std::vector<unsigned> masks_;
  std::vector<double> values_;
};

using ProxyFunction = std::function<Vec(const Vec &)>;

// Apply a moment to a field given by its proxy, on the physical sub-simplex with the
// given vertices (ascending order), by quadrature of the pulled-back integrand.
double apply_dof_to_field(const DofDescriptor &dof, int dim, int k,
                          std::span<const Vec> sub_vertices, const ProxyFunction &field,
                          int quadrature_degree);

}  // namespace maxfeec

#endif  // MAXFEEC_WHITNEY_HPP
