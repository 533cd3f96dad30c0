// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_SYSTEM_HPP
#define MAXFEEC_SYSTEM_HPP

#include <memory>
#include <string>

#include "maxfeec/analysis.hpp"
#include "maxfeec/assembly.hpp"
#include "maxfeec/linalg.hpp"
#include "maxfeec/problems.hpp"

namespace maxfeec
{

enum class Scheme
{
  CrankNicholson,
  Leapfrog,
  BackwardEuler
};

// "cn", "leapfrog", "backward-euler".
std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string &name);

//
// Factors of one step of the form
//
//   [ a_p M0/dt        -c_pE C       0          ] x_new
//   [ c_Ep G           a_E M1e/dt   -c_EH K'    ]
//   [ 0                c_HE K        a_H M2m/dt ]
//
//   = [ a_p M0/dt       o_pE C       0          ] x_old + forcing.
//     [ -o_Ep G         a_E M1e/dt   o_EH K'    ]
//     [ 0              -o_HE K       a_H M2m/dt ]
//
struct StepCoefficients
{
  double a_p = 1, a_E = 1, a_H = 1;
  double c_pE = 0.5, c_Ep = 0.5, c_EH = 0.5, c_HE = 0.5;
  double o_pE = 0.5, o_Ep = 0.5, o_EH = 0.5, o_HE = 0.5;
};

StepCoefficients crank_nicholson_coefficients();
StepCoefficients leapfrog_coefficients();
StepCoefficients leapfrog_bootstrap_coefficients();
StepCoefficients backward_euler_coefficients();

//
// One monolithic step system over the interior DOFs of (p, E, H). Boundary DOFs of the
// new level are prescribed and moved to the right-hand side; the old level enters with
// all of its DOFs. Factorized once at construction.
//
class StepSystem
{
public:
  StepSystem(const SystemMatrices &matrices, const StepCoefficients &coef, double dt);

  // Full (all-DOF) new-level and old-level operators.
  const SparseMatrix &new_operator() const { return a_new_; }
  const SparseMatrix &old_operator() const { return a_old_; }
  // New-level operator restricted to interior rows and columns.
  const SparseMatrix &interior_operator() const { return a_ii_; }

  // `fixed` is a full-length (p, E, H) vector whose boundary entries hold the new
  // boundary values; `load` is the full-length forcing vector.
  Vector solve(const Vector &old_state, const Vector &fixed, const Vector &load) const;

  const std::vector<int> &interior() const { return interior_; }
  const std::vector<int> &boundary() const { return boundary_; }

private:
  SparseMatrix a_new_, a_old_, a_ii_, a_ib_;
  std::vector<int> interior_, boundary_;
  std::unique_ptr<Factorization> lu_;
};

//
// Time integrator for one scheme, mesh and problem. The leapfrog integrator takes its
// bootstrap step from a state with all levels at 0.
//
class Integrator
{
public:
  Integrator(const Mesh &mesh, const SystemMatrices &matrices, const ProblemSpec &problem,
             Scheme scheme, double dt, double t_min, int quadrature_degree);

  Scheme scheme() const { return scheme_; }
  double dt() const { return dt_; }
  double time(double level) const { return t_min_ + level * dt_; }

  // L2 projection of the exact fields at t_min with boundary DOFs fixed to their traces.
  FieldState initial_state() const;

  // Advance by one step. Throws InvalidArgument if the input levels do not fit the scheme.
  FieldState advance(const FieldState &state) const;

  // Boundary-trace vectors of each field at time t (zeros for homogeneous problems).
  Vector boundary_p(double t) const;
  Vector boundary_E(double t) const;
  Vector boundary_H(double t) const;

  const StepSystem &system() const { return *main_; }
  const StepSystem *bootstrap_system() const { return bootstrap_.get(); }

private:
  FieldState solve_step(const StepSystem &sys, const FieldState &old, double new_p, double new_E,
                        double new_H, const std::vector<std::pair<double, double>> &force_p,
                        const std::vector<std::pair<double, double>> &force_E,
                        const std::vector<std::pair<double, double>> &force_H) const;
  Vector load(const DofMap &dofs, const SpaceTimeField &f,
              const std::vector<std::pair<double, double>> &times) const;

  const Mesh &mesh_;
  const SystemMatrices &m_;
  const ProblemSpec &problem_;
  Scheme scheme_;
  double dt_, t_min_;
  int degree_;
  std::unique_ptr<StepSystem> main_, bootstrap_;
};

struct SchemeConfig
{
  Scheme scheme = Scheme::CrankNicholson;
  double dt = 0.01;
  double t_min = 0.0, t_max = 1.0;
  int r = 1;

  // N = (t_max - t_min) / dt; throws InvalidArgument unless it is a positive integer
  // within 1e-9.
  int num_steps() const;
};

struct SimulationResult
{
  EnergyTrace trace;
  FieldState final_state;
  ErrorReport errors;
  double assemble_seconds = 0.0, solve_seconds = 0.0;
};

// Assemble, project the initial data, take N steps recording the energy after each one
// (at the H level for leapfrog), and measure final errors with p and E at their own
// levels.
SimulationResult run_simulation(const Mesh &mesh, const ProblemSpec &problem,
                                const SchemeConfig &config);

}  // namespace maxfeec

#endif  // MAXFEEC_SYSTEM_HPP
