// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_ASSEMBLY_HPP
#define MAXFEEC_ASSEMBLY_HPP

#include <span>
#include <vector>

#include "maxfeec/linalg.hpp"
#include "maxfeec/mesh.hpp"
#include "maxfeec/whitney.hpp"

namespace maxfeec
{

// Default quadrature degree for assembly and error integrals at order r.
inline int default_quadrature_degree(int r)
{
  return 2 * r + 2;
}

//
// Positive piecewise-constant coefficient, one value per cell.
//
class CellCoefficient
{
public:
  // Throws InvalidArgument unless value > 0.
  static CellCoefficient constant(double value);
  static CellCoefficient per_cell(std::vector<double> values);

  double operator()(int cell) const { return values_.empty() ? constant_ : values_[cell]; }
  bool is_constant() const { return values_.empty(); }
  CellCoefficient inverse() const;

private:
  double constant_ = 1.0;
  std::vector<double> values_;
};

//
// Global numbering of P_r^- Lambda^k. DOFs are grouped by sub-simplex dimension m = k..dim,
// then by m-simplex in skeleton order, then by moment. A DOF is a boundary DOF when its
// supporting sub-simplex lies on the boundary.
//
class DofMap
{
public:
  struct Support
  {
    int sub_dim = 0;
    int simplex = 0;
    int moment = 0;
  };

  int dim() const { return dim_; }
  int k() const { return k_; }
  int r() const { return r_; }
  int size() const { return static_cast<int>(support_.size()); }
  int local_size() const { return local_size_; }

  std::span<const int> cell_dofs(int c) const
  {
    return {cell_dofs_.data() + c * local_size_, std::size_t(local_size_)};
  }
  std::span<const int> cell_signs(int c) const
  {
    return {cell_signs_.data() + c * local_size_, std::size_t(local_size_)};
  }
  const Support &support(int i) const { return support_[i]; }
  bool is_boundary(int i) const { return boundary_flag_[i] != 0; }
  const std::vector<int> &boundary_dofs() const { return boundary_; }
  const std::vector<int> &interior_dofs() const { return interior_; }

private:
  friend DofMap build_dof_map(const Mesh &, int, int);
  int dim_ = 0, k_ = 0, r_ = 0, local_size_ = 0;
  std::vector<int> cell_dofs_;
  std::vector<int> cell_signs_;
  std::vector<Support> support_;
  std::vector<char> boundary_flag_;
  std::vector<int> boundary_, interior_;
};

DofMap build_dof_map(const Mesh &mesh, int k, int r);

// One side of a bilinear form: the basis of a DOF map, or its exterior derivative.
struct FormSide
{
  const DofMap *dofs = nullptr;
  bool derivative = false;
};

// Entry (i, j) = sum over cells of int w * a_i . b_j, where a and b are the proxies of the
// two sides. Both sides must have the same proxy degree.
SparseMatrix assemble_bilinear(const Mesh &mesh, FormSide rows, FormSide cols,
                               const CellCoefficient &weight, int quadrature_degree);

SparseMatrix assemble_mass(const Mesh &mesh, const DofMap &dofs, const CellCoefficient &weight);

// C(i, j) = int eps phi^1_j . grad phi^0_i (rows are 0-form DOFs).
SparseMatrix assemble_weighted_grad_coupling(const Mesh &mesh, const DofMap &dofs0,
                                             const DofMap &dofs1, const CellCoefficient &eps);

// G(i, j) = int phi^1_i . grad phi^0_j (rows are 1-form DOFs).
SparseMatrix assemble_grad_coupling(const Mesh &mesh, const DofMap &dofs0, const DofMap &dofs1);

// K(i, j) = int phi^2_i . curl phi^1_j; scalar rot in 2D.
SparseMatrix assemble_curl_coupling(const Mesh &mesh, const DofMap &dofs1, const DofMap &dofs2);

// Coefficient-level exterior derivative from the k-form space to the (k+1)-form space.
SparseMatrix assemble_derivative(const Mesh &mesh, const DofMap &from, const DofMap &to);

// b_i = int w phi_i . f over the mesh.
Vector assemble_load(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                     const CellCoefficient &weight, int quadrature_degree);

// Moments of a field for the listed DOFs (others are left at zero), by quadrature on
// the supporting sub-simplices.
Vector interpolate_dofs(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                        const std::vector<int> &which, int quadrature_degree);

// Boundary DOFs set to the trace moments of the field; all other entries zero.
Vector boundary_values(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                       int quadrature_degree);

// Weighted L2 projection: solves M x = b. Throws SolverError if M is singular.
Vector l2_project(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                  const CellCoefficient &weight);

// L2 projection with the boundary DOFs held at `fixed` (typically boundary_values()):
// M_II x_I = b_I - M_IB x_B.
Vector l2_project_constrained(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                              const CellCoefficient &weight, const Vector &fixed);

// Proxy of a coefficient vector at barycentric point `bary` of cell c.
Vec evaluate_field(const Mesh &mesh, const DofMap &dofs, const Vector &coeffs, int cell,
                   std::span<const double> bary);

// Physical point of cell c at barycentric coordinates `bary`.
Vec cell_point(const Mesh &mesh, int cell, std::span<const double> bary);

// Barycentric gradients of cell c.
Eigen::MatrixXd cell_gradients(const Mesh &mesh, int cell);

//
// Everything a time integrator needs for one (mesh, r, eps, mu).
//
struct SystemMatrices
{
  DofMap dofs0, dofs1, dofs2;
  SparseMatrix M0, M0_eps_inv;
  SparseMatrix M1, M1_eps;
  SparseMatrix M2, M2_mu;
  SparseMatrix C, G, K;
  SparseMatrix D0, D1;
  CellCoefficient eps, mu;
};

SystemMatrices assemble_system(const Mesh &mesh, int r, const CellCoefficient &eps,
                               const CellCoefficient &mu);

}  // namespace maxfeec

#endif  // MAXFEEC_ASSEMBLY_HPP
