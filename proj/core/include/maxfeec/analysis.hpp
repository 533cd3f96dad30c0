// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_ANALYSIS_HPP
#define MAXFEEC_ANALYSIS_HPP

#include <string>
#include <utility>
#include <vector>

#include "maxfeec/assembly.hpp"
#include "maxfeec/problems.hpp"

namespace maxfeec
{

//
// Coefficient vectors of (p, E, H) with their time levels in units of dt after t_min.
// Crank-Nicholson and backward Euler keep all three equal; leapfrog keeps p and E half a
// step behind H.
//
struct FieldState
{
  Vector p, E, H;
  double level_p = 0.0, level_E = 0.0, level_H = 0.0;
};

struct EnergyTrace
{
  std::string scheme;
  int problem_id = 0;
  std::vector<double> t;
  std::vector<double> energy;
};

struct ErrorReport
{
  double e_p = 0.0, e_E = 0.0, e_H = 0.0;
  double h = 0.0, dt = 0.0;
  int r = 0;
  double total() const { return e_p + e_E + e_H; }
};

// p' M0_{1/eps} p + E' M1_eps E + H' M2_mu H over all DOFs.
double discrete_energy(const FieldState &state, const SystemMatrices &matrices);

// Per-field weighted energies (same order as EnergyParts).
EnergyParts discrete_energy_parts(const FieldState &state, const SystemMatrices &matrices);

// Weighted L2 errors of each field against the exact solution at its own time.
ErrorReport error_norms(const Mesh &mesh, const SystemMatrices &matrices, const FieldState &state,
                        const ProblemSpec &problem, double t_p, double t_E, double t_H,
                        int quadrature_degree);

// Least-squares slope of log(error) against log(parameter). Needs at least two samples
// with positive entries.
double estimate_order(const std::vector<std::pair<double, double>> &samples);

}  // namespace maxfeec

#endif  // MAXFEEC_ANALYSIS_HPP
