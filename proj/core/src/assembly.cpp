// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/assembly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>

#include "maxfeec/simplex.hpp"

namespace maxfeec
{

CellCoefficient CellCoefficient::constant(double value)
{
  MAXFEEC_VERIFY(value > 0.0 && std::isfinite(value), "material coefficient must be positive");
  CellCoefficient c;
  c.constant_ = value;
  return c;
}

CellCoefficient CellCoefficient::per_cell(std::vector<double> values)
{
  MAXFEEC_VERIFY(!values.empty(), "per-cell coefficient needs at least one value");
  for (double v : values)
  {
    MAXFEEC_VERIFY(v > 0.0 && std::isfinite(v), "material coefficient must be positive");
  }
  CellCoefficient c;
  c.values_ = std::move(values);
  return c;
}

CellCoefficient CellCoefficient::inverse() const
{
  if (is_constant())
  {
    return constant(1.0 / constant_);
  }
  std::vector<double> inv(values_.size());
  std::transform(values_.begin(), values_.end(), inv.begin(), [](double v) { return 1.0 / v; });
  return per_cell(std::move(inv));
}

DofMap build_dof_map(const Mesh &mesh, int k, int r)
{
  const int dim = mesh.dim();
  MAXFEEC_VERIFY(k >= 0 && k <= dim, "form degree out of range for the mesh");
  const LocalBasis &basis = reference_basis(dim, k, r);

  DofMap map;
  map.dim_ = dim;
  map.k_ = k;
  map.r_ = r;
  map.local_size_ = basis.size();

  std::vector<int> offset(dim + 2, 0);
  for (int m = 0; m <= dim; m++)
  {
    const int per = m >= k ? basis.dofs_per_subsimplex(m) : 0;
    offset[m + 1] = offset[m] + per * mesh.num_simplices(m);
  }
  map.support_.resize(offset[dim + 1]);
  map.boundary_flag_.assign(offset[dim + 1], 0);
  for (int m = k; m <= dim; m++)
  {
    const int per = basis.dofs_per_subsimplex(m);
    for (int s = 0; s < mesh.num_simplices(m); s++)
    {
      for (int q = 0; q < per; q++)
      {
        const int g = offset[m] + s * per + q;
        map.support_[g] = {m, s, q};
        map.boundary_flag_[g] = m < dim && mesh.on_boundary(m, s);
      }
    }
  }
  for (int i = 0; i < map.size(); i++)
  {
    (map.boundary_flag_[i] ? map.boundary_ : map.interior_).push_back(i);
  }

  map.cell_dofs_.resize(std::size_t(mesh.num_cells()) * basis.size());
  map.cell_signs_.resize(map.cell_dofs_.size());
  for (int c = 0; c < mesh.num_cells(); c++)
  {
    for (int i = 0; i < basis.size(); i++)
    {
      const DofDescriptor &d = basis.dofs()[i];
      const int per = basis.dofs_per_subsimplex(d.sub_dim);
      const int s = mesh.cell_subsimplices(c, d.sub_dim)[d.sub_local];
      map.cell_dofs_[c * basis.size() + i] = offset[d.sub_dim] + s * per + d.moment;
      // Moments are taken in the sub-simplex's own ascending order, so the only sign
      // is the relative orientation of the local and global sub-simplex.
      map.cell_signs_[c * basis.size() + i] = mesh.cell_subsimplex_sign(c, d.sub_dim, d.sub_local);
    }
  }
  return map;
}

Vec cell_point(const Mesh &mesh, int cell, std::span<const double> bary)
{
  Vec x = Vec::Zero(mesh.dim());
  const auto verts = mesh.cell(cell);
  for (std::size_t j = 0; j < verts.size(); j++)
  {
    x += bary[j] * mesh.vertex(verts[j]);
  }
  return x;
}

Eigen::MatrixXd cell_gradients(const Mesh &mesh, int cell)
{
  std::array<Vec, 4> v;
  const auto verts = mesh.cell(cell);
  for (std::size_t j = 0; j < verts.size(); j++)
  {
    v[j] = mesh.vertex(verts[j]);
  }
  return barycentric_gradients(std::span<const Vec>(v.data(), verts.size()));
}

namespace
{

// Physical proxy values of every basis function of a tabulation at every point of a cell:
// out[q] is (num_functions x proxy components).
void cell_values(const Tabulation &tab, const Eigen::MatrixXd &grads, int dim,
                 std::span<const int> signs, std::vector<Eigen::MatrixXd> &out)
{
  const auto &masks = tab.masks();
  const int comps = proxy_size(dim, tab.form_degree());
  std::vector<Vec> wedges(masks.size());
  for (std::size_t m = 0; m < masks.size(); m++)
  {
    wedges[m] = wedge_proxy(masks[m], grads);
  }
  out.resize(tab.num_points());
  for (int q = 0; q < tab.num_points(); q++)
  {
    Eigen::MatrixXd &v = out[q];
    v.setZero(tab.num_functions(), comps);
    for (int i = 0; i < tab.num_functions(); i++)
    {
      for (std::size_t m = 0; m < masks.size(); m++)
      {
        const double t = tab.value(q, i, static_cast<int>(m));
        if (t != 0.0)
        {
          v.row(i) += t * wedges[m].transpose();
        }
      }
      if (signs[i] < 0)
      {
        v.row(i) *= -1.0;
      }
    }
  }
}

double cell_jacobian(const Mesh &mesh, int c)
{
  // Reference weights sum to 1/dim!, so the physical factor is |det J| = dim! * volume.
  const double fact = mesh.dim() == 2 ? 2.0 : 6.0;
  return fact * mesh.cell_volume(c);
}

}  // namespace

SparseMatrix assemble_bilinear(const Mesh &mesh, FormSide rows, FormSide cols,
                               const CellCoefficient &weight, int quadrature_degree)
{
  MAXFEEC_VERIFY(rows.dofs && cols.dofs, "bilinear form needs two DOF maps");
  MAXFEEC_VERIFY(rows.dofs->r() == cols.dofs->r(), "coupled spaces must share the order r");
  const int dim = mesh.dim();
  MAXFEEC_VERIFY(rows.dofs->dim() == dim && cols.dofs->dim() == dim,
                 "DOF map does not belong to this mesh");
  const int deg_rows = rows.dofs->k() + rows.derivative;
  const int deg_cols = cols.dofs->k() + cols.derivative;
  MAXFEEC_VERIFY(deg_rows == deg_cols, "bilinear form pairs forms of different degree");
  MAXFEEC_VERIFY(deg_rows <= dim, "derivative of a top-degree form");

  const QuadratureRule &rule = quadrature_rule(dim, quadrature_degree);
  const Tabulation tab_r(reference_basis(dim, rows.dofs->k(), rows.dofs->r()), rule, rows.derivative);
  const Tabulation tab_c(reference_basis(dim, cols.dofs->k(), cols.dofs->r()), rule, cols.derivative);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(mesh.num_cells()) * tab_r.num_functions() * tab_c.num_functions());
  std::vector<Eigen::MatrixXd> vr, vc;
  Eigen::MatrixXd local(tab_r.num_functions(), tab_c.num_functions());
  for (int c = 0; c < mesh.num_cells(); c++)
  {
    const Eigen::MatrixXd grads = cell_gradients(mesh, c);
    cell_values(tab_r, grads, dim, rows.dofs->cell_signs(c), vr);
    cell_values(tab_c, grads, dim, cols.dofs->cell_signs(c), vc);
    local.setZero();
    for (int q = 0; q < rule.size(); q++)
    {
      local.noalias() += rule.weights[q] * (vr[q] * vc[q].transpose());
    }
    local *= weight(c) * cell_jacobian(mesh, c);
    const auto gr = rows.dofs->cell_dofs(c), gc = cols.dofs->cell_dofs(c);
    for (int i = 0; i < local.rows(); i++)
    {
      for (int j = 0; j < local.cols(); j++)
      {
        trip.emplace_back(gr[i], gc[j], local(i, j));
      }
    }
  }
  SparseMatrix out(rows.dofs->size(), cols.dofs->size());
  out.setFromTriplets(trip.begin(), trip.end());
  out.prune(0.0);
  return out;
}

SparseMatrix assemble_mass(const Mesh &mesh, const DofMap &dofs, const CellCoefficient &weight)
{
  return assemble_bilinear(mesh, {&dofs, false}, {&dofs, false}, weight,
                           default_quadrature_degree(dofs.r()));
}

SparseMatrix assemble_weighted_grad_coupling(const Mesh &mesh, const DofMap &dofs0,
                                             const DofMap &dofs1, const CellCoefficient &eps)
{
  MAXFEEC_VERIFY(dofs0.k() == 0 && dofs1.k() == 1, "grad coupling pairs 0-forms with 1-forms");
  return assemble_bilinear(mesh, {&dofs0, true}, {&dofs1, false}, eps,
                           default_quadrature_degree(dofs0.r()));
}

SparseMatrix assemble_grad_coupling(const Mesh &mesh, const DofMap &dofs0, const DofMap &dofs1)
{
  MAXFEEC_VERIFY(dofs0.k() == 0 && dofs1.k() == 1, "grad coupling pairs 0-forms with 1-forms");
  return assemble_bilinear(mesh, {&dofs1, false}, {&dofs0, true}, CellCoefficient::constant(1.0),
                           default_quadrature_degree(dofs0.r()));
}

SparseMatrix assemble_curl_coupling(const Mesh &mesh, const DofMap &dofs1, const DofMap &dofs2)
{
  MAXFEEC_VERIFY(dofs1.k() == 1 && dofs2.k() == 2, "curl coupling pairs 1-forms with 2-forms");
  return assemble_bilinear(mesh, {&dofs2, false}, {&dofs1, true}, CellCoefficient::constant(1.0),
                           default_quadrature_degree(dofs1.r()));
}

SparseMatrix assemble_derivative(const Mesh &mesh, const DofMap &from, const DofMap &to)
{
  MAXFEEC_VERIFY(to.k() == from.k() + 1 && to.r() == from.r(),
                 "derivative maps k-forms to (k+1)-forms of the same order");
  const Eigen::MatrixXd d = local_exterior_derivative(mesh.dim(), from.k(), from.r());
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < mesh.num_cells(); c++)
  {
    const auto gf = from.cell_dofs(c), gt = to.cell_dofs(c);
    const auto sf = from.cell_signs(c), st = to.cell_signs(c);
    for (int j = 0; j < d.rows(); j++)
    {
      for (int i = 0; i < d.cols(); i++)
      {
        if (std::abs(d(j, i)) > 1e-14)
        {
          trip.emplace_back(gt[j], gf[i], st[j] * sf[i] * d(j, i));
        }
      }
    }
  }
  // Conforming cells agree on shared entries; keep one copy instead of summing.
  SparseMatrix out(to.size(), from.size());
  out.setFromTriplets(trip.begin(), trip.end(), [](double, double b) { return b; });
  return out;
}

Vector assemble_load(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                     const CellCoefficient &weight, int quadrature_degree)
{
  const int dim = mesh.dim();
  const QuadratureRule &rule = quadrature_rule(dim, quadrature_degree);
  const Tabulation tab(reference_basis(dim, dofs.k(), dofs.r()), rule);
  Vector b = Vector::Zero(dofs.size());
  std::vector<Eigen::MatrixXd> vals;
  Vector local(dofs.local_size());
  for (int c = 0; c < mesh.num_cells(); c++)
  {
    cell_values(tab, cell_gradients(mesh, c), dim, dofs.cell_signs(c), vals);
    local.setZero();
    for (int q = 0; q < rule.size(); q++)
    {
      const Vec f = field(cell_point(mesh, c, rule.point(q)));
      MAXFEEC_VERIFY(f.size() == vals[q].cols(), "field has the wrong number of components");
      local.noalias() += rule.weights[q] * (vals[q] * f);
    }
    local *= weight(c) * cell_jacobian(mesh, c);
    const auto g = dofs.cell_dofs(c);
    for (int i = 0; i < local.size(); i++)
    {
      b[g[i]] += local[i];
    }
  }
  return b;
}

Vector interpolate_dofs(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                        const std::vector<int> &which, int quadrature_degree)
{
  const LocalBasis &basis = reference_basis(mesh.dim(), dofs.k(), dofs.r());
  // The weight of a moment depends only on (m, moment), not on the cell.
  std::vector<std::vector<const DofDescriptor *>> descriptor(mesh.dim() + 1);
  for (const DofDescriptor &d : basis.dofs())
  {
    auto &slot = descriptor[d.sub_dim];
    if (static_cast<int>(slot.size()) <= d.moment)
    {
      slot.resize(d.moment + 1, nullptr);
    }
    if (!slot[d.moment])
    {
      slot[d.moment] = &d;
    }
  }
  Vector x = Vector::Zero(dofs.size());
  std::array<Vec, 4> verts;
  for (int i : which)
  {
    const DofMap::Support &s = dofs.support(i);
    const auto tuple = mesh.simplex(s.sub_dim, s.simplex);
    for (std::size_t j = 0; j < tuple.size(); j++)
    {
      verts[j] = mesh.vertex(tuple[j]);
    }
    x[i] = apply_dof_to_field(*descriptor[s.sub_dim][s.moment], mesh.dim(), dofs.k(),
                              std::span<const Vec>(verts.data(), tuple.size()), field,
                              quadrature_degree);
  }
  return x;
}

Vector boundary_values(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                       int quadrature_degree)
{
  return interpolate_dofs(mesh, dofs, field, dofs.boundary_dofs(), quadrature_degree);
}

namespace
{

Vector solve_spd(const SparseMatrix &a, const Vector &b)
{
  if (a.rows() == 0)
  {
    return Vector();
  }
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success)
  {
    throw SolverError("mass matrix factorization failed");
  }
  return ldlt.solve(b);
}

}  // namespace

Vector l2_project(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                  const CellCoefficient &weight)
{
  const int degree = default_quadrature_degree(dofs.r());
  return solve_spd(assemble_mass(mesh, dofs, weight),
                   assemble_load(mesh, dofs, field, weight, degree));
}

Vector l2_project_constrained(const Mesh &mesh, const DofMap &dofs, const ProxyFunction &field,
                              const CellCoefficient &weight, const Vector &fixed)
{
  MAXFEEC_VERIFY(fixed.size() == dofs.size(), "fixed values have the wrong length");
  const SparseMatrix m = assemble_mass(mesh, dofs, weight);
  const Vector b = assemble_load(mesh, dofs, field, weight, default_quadrature_degree(dofs.r()));
  const auto &in = dofs.interior_dofs();
  const auto &bd = dofs.boundary_dofs();
  Vector xb(bd.size()), bi(in.size());
  for (std::size_t j = 0; j < bd.size(); j++)
  {
    xb[j] = fixed[bd[j]];
  }
  for (std::size_t j = 0; j < in.size(); j++)
  {
    bi[j] = b[in[j]];
  }
  if (!bd.empty())
  {
    bi -= restrict_matrix(m, in, bd) * xb;
  }
  const Vector xi = solve_spd(restrict_matrix(m, in, in), bi);
  Vector x = fixed;
  for (std::size_t j = 0; j < in.size(); j++)
  {
    x[in[j]] = xi[j];
  }
  return x;
}

Vec evaluate_field(const Mesh &mesh, const DofMap &dofs, const Vector &coeffs, int cell,
                   std::span<const double> bary)
{
  const LocalBasis &basis = reference_basis(mesh.dim(), dofs.k(), dofs.r());
  const Eigen::MatrixXd grads = cell_gradients(mesh, cell);
  const auto g = dofs.cell_dofs(cell);
  const auto s = dofs.cell_signs(cell);
  Vec v = Vec::Zero(proxy_size(mesh.dim(), dofs.k()));
  for (int i = 0; i < basis.size(); i++)
  {
    v += s[i] * coeffs[g[i]] * basis.eval(i, bary, grads);
  }
  return v;
}

SystemMatrices assemble_system(const Mesh &mesh, int r, const CellCoefficient &eps,
                               const CellCoefficient &mu)
{
  SystemMatrices s{build_dof_map(mesh, 0, r), build_dof_map(mesh, 1, r), build_dof_map(mesh, 2, r),
                   {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, eps, mu};
  const CellCoefficient one = CellCoefficient::constant(1.0);
  s.M0 = assemble_mass(mesh, s.dofs0, one);
  s.M0_eps_inv = assemble_mass(mesh, s.dofs0, eps.inverse());
  s.M1 = assemble_mass(mesh, s.dofs1, one);
  s.M1_eps = assemble_mass(mesh, s.dofs1, eps);
  s.M2 = assemble_mass(mesh, s.dofs2, one);
  s.M2_mu = assemble_mass(mesh, s.dofs2, mu);
  s.C = assemble_weighted_grad_coupling(mesh, s.dofs0, s.dofs1, eps);
  s.G = assemble_grad_coupling(mesh, s.dofs0, s.dofs1);
  s.K = assemble_curl_coupling(mesh, s.dofs1, s.dofs2);
  s.D0 = assemble_derivative(mesh, s.dofs0, s.dofs1);
  s.D1 = assemble_derivative(mesh, s.dofs1, s.dofs2);
  return s;
}

}  // namespace maxfeec
