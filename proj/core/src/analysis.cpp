// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/analysis.hpp"

#include <cmath>

namespace maxfeec
{

EnergyParts discrete_energy_parts(const FieldState &s, const SystemMatrices &m)
{
  MAXFEEC_VERIFY(s.p.size() == m.M0_eps_inv.rows() && s.E.size() == m.M1_eps.rows() &&
                     s.H.size() == m.M2_mu.rows(),
                 "state dimensions do not match the system matrices");
  return {s.p.dot(m.M0_eps_inv * s.p), s.E.dot(m.M1_eps * s.E), s.H.dot(m.M2_mu * s.H)};
}

double discrete_energy(const FieldState &state, const SystemMatrices &matrices)
{
  return discrete_energy_parts(state, matrices).total();
}

namespace
{

double weighted_error(const Mesh &mesh, const DofMap &dofs, const Vector &coeffs,
                      const SpaceTimeField &exact, double t, const CellCoefficient &weight,
                      int degree)
{
  const QuadratureRule &rule = quadrature_rule(mesh.dim(), degree);
  const double fact = mesh.dim() == 2 ? 2.0 : 6.0;
  double sum = 0.0;
  for (int c = 0; c < mesh.num_cells(); c++)
  {
    double cell = 0.0;
    for (int q = 0; q < rule.size(); q++)
    {
      const Vec x = cell_point(mesh, c, rule.point(q));
      const Vec diff = exact(x, t) - evaluate_field(mesh, dofs, coeffs, c, rule.point(q));
      cell += rule.weights[q] * diff.squaredNorm();
    }
    sum += weight(c) * fact * mesh.cell_volume(c) * cell;
  }
  return std::sqrt(sum);
}

}  // namespace

ErrorReport error_norms(const Mesh &mesh, const SystemMatrices &m, const FieldState &s,
                        const ProblemSpec &problem, double t_p, double t_E, double t_H,
                        int quadrature_degree)
{
  ErrorReport e;
  e.r = m.dofs0.r();
  e.h = mesh.max_edge_length();
  e.e_p = weighted_error(mesh, m.dofs0, s.p, problem.p, t_p, m.eps.inverse(), quadrature_degree);
  e.e_E = weighted_error(mesh, m.dofs1, s.E, problem.E, t_E, m.eps, quadrature_degree);
  e.e_H = weighted_error(mesh, m.dofs2, s.H, problem.H, t_H, m.mu, quadrature_degree);
  return e;
}

double estimate_order(const std::vector<std::pair<double, double>> &samples)
{
  MAXFEEC_VERIFY(samples.size() >= 2, "order estimate needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto &[param, err] : samples)
  {
    MAXFEEC_VERIFY(param > 0.0 && err > 0.0, "order estimate needs positive parameters and errors");
    const double x = std::log(param), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(samples.size());
  const double denom = n * sxx - sx * sx;
  MAXFEEC_VERIFY(denom > 0.0, "order estimate needs at least two distinct parameters");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace maxfeec
