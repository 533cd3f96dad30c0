// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_PROBLEMS_HPP
#define MAXFEEC_PROBLEMS_HPP

#include <functional>
#include <string>

#include "maxfeec/common.hpp"

namespace maxfeec
{

// Proxy-valued field of space and time. p and scalar quantities use one component; the
// 2-form H is a scalar in 2D and a flux vector in 3D.
using SpaceTimeField = std::function<Vec(const Vec &x, double t)>;

struct EnergyParts
{
  double p = 0.0;  // ||p||^2 weighted by 1/eps
  double E = 0.0;  // ||E||^2 weighted by eps
  double H = 0.0;  // ||H||^2 weighted by mu
  double total() const { return p + E + H; }
};

//
// Analytic solution of
//
//   p_t + div(eps E) = f_p,   grad p + eps E_t - curl H = f_E,   mu H_t + curl E = f_H,
//
// with closed-form derivatives. In 2D, curl E is the scalar dE_y/dx - dE_x/dy and curl H
// is the vector (dH/dy, -dH/dx).
//
struct ProblemSpec
{
  int id = 0;
  std::string name;
  int dim = 2;
  double eps = 1.0, mu = 1.0;
  double t_min = 0.0, t_max = 1.0;
  bool homogeneous = true;

  SpaceTimeField p, grad_p, p_t;
  SpaceTimeField E, E_t, div_E, curl_E;
  SpaceTimeField H, H_t, curl_H;
  SpaceTimeField div_H;  // unset in 2D, where the condition is vacuous
  SpaceTimeField f_p, f_E, f_H;

  // Closed-form split of the exact energy.
  std::function<EnergyParts(double)> energy_parts;
  // Commonly quoted closed form of the energy. For examples 5 and 6 it differs from the
  // energy of the fields above (see README); kept for comparison only.
  std::function<double(double)> tabulated_energy;

  double exact_energy(double t) const { return energy_parts(t).total(); }
};

// Catalog entries 1..6. Throws InvalidArgument for other ids or names.
const ProblemSpec &get_problem(int id);
const ProblemSpec &get_problem(const std::string &name);

// A problem with all fields identically zero (zero-state invariance checks).
ProblemSpec zero_problem(int dim);

struct Residuals
{
  double p = 0.0, E = 0.0, H = 0.0;
};

// Max-norm residuals of the three equations at (x, t) from the closed-form derivatives.
Residuals equation_residuals(const ProblemSpec &problem, const Vec &x, double t);

}  // namespace maxfeec

#endif  // MAXFEEC_PROBLEMS_HPP
