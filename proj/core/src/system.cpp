// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/system.hpp"

#include <chrono>
#include <cmath>

namespace maxfeec
{

std::string scheme_name(Scheme scheme)
{
  switch (scheme)
  {
    case Scheme::CrankNicholson:
      return "cn";
    case Scheme::Leapfrog:
      return "leapfrog";
    case Scheme::BackwardEuler:
      return "backward-euler";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string &name)
{
  if (name == "cn")
  {
    return Scheme::CrankNicholson;
  }
  if (name == "leapfrog")
  {
    return Scheme::Leapfrog;
  }
  if (name == "backward-euler")
  {
    return Scheme::BackwardEuler;
  }
  throw InvalidArgument("unknown scheme '" + name + "' (expected cn, leapfrog or backward-euler)");
}

StepCoefficients crank_nicholson_coefficients()
{
  return {};
}

StepCoefficients leapfrog_coefficients()
{
  // The staggered step has the same algebraic form as Crank-Nicholson; only the time
  // levels of the unknowns and of the forcing differ.
  return {};
}

StepCoefficients leapfrog_bootstrap_coefficients()
{
  StepCoefficients c;
  c.a_p = c.a_E = 2.0;  // half-step differences
  c.c_pE = c.o_pE = 0.25;
  c.c_Ep = c.o_Ep = 0.25;
  c.c_EH = c.o_EH = 0.5;
  c.c_HE = c.o_HE = 0.25;
  return c;
}

StepCoefficients backward_euler_coefficients()
{
  StepCoefficients c;
  c.c_pE = c.c_Ep = c.c_EH = c.c_HE = 1.0;
  c.o_pE = c.o_Ep = c.o_EH = c.o_HE = 0.0;
  return c;
}

StepSystem::StepSystem(const SystemMatrices &m, const StepCoefficients &c, double dt)
{
  MAXFEEC_VERIFY(dt > 0.0, "time step must be positive");
  const SparseMatrix kt = m.K.transpose();
  a_new_ = block_compose({{{&m.M0, c.a_p / dt}, {&m.C, -c.c_pE}, {}},
                          {{&m.G, c.c_Ep}, {&m.M1_eps, c.a_E / dt}, {&kt, -c.c_EH}},
                          {{}, {&m.K, c.c_HE}, {&m.M2_mu, c.a_H / dt}}});
  a_old_ = block_compose({{{&m.M0, c.a_p / dt}, {&m.C, c.o_pE}, {}},
                          {{&m.G, -c.o_Ep}, {&m.M1_eps, c.a_E / dt}, {&kt, c.o_EH}},
                          {{}, {&m.K, -c.o_HE}, {&m.M2_mu, c.a_H / dt}}});
  const int n0 = m.dofs0.size(), n1 = m.dofs1.size();
  auto append = [this](const DofMap &d, int offset)
  {
    for (int i = 0; i < d.size(); i++)
    {
      (d.is_boundary(i) ? boundary_ : interior_).push_back(offset + i);
    }
  };
  append(m.dofs0, 0);
  append(m.dofs1, n0);
  append(m.dofs2, n0 + n1);
  a_ii_ = restrict_matrix(a_new_, interior_, interior_);
  a_ib_ = restrict_matrix(a_new_, interior_, boundary_);
  lu_ = std::make_unique<Factorization>(a_ii_);
}

Vector StepSystem::solve(const Vector &old_state, const Vector &fixed, const Vector &load) const
{
  MAXFEEC_VERIFY(old_state.size() == a_new_.rows() && fixed.size() == a_new_.rows() &&
                     load.size() == a_new_.rows(),
                 "step vectors do not match the system size");
  const Vector full_rhs = a_old_ * old_state + load;
  Vector rhs(interior_.size()), xb(boundary_.size());
  for (std::size_t i = 0; i < interior_.size(); i++)
  {
    rhs[i] = full_rhs[interior_[i]];
  }
  for (std::size_t j = 0; j < boundary_.size(); j++)
  {
    xb[j] = fixed[boundary_[j]];
  }
  if (!boundary_.empty())
  {
    rhs -= a_ib_ * xb;
  }
  const Vector xi = lu_->solve(rhs);
  Vector x = fixed;
  for (std::size_t i = 0; i < interior_.size(); i++)
  {
    x[interior_[i]] = xi[i];
  }
  return x;
}

Integrator::Integrator(const Mesh &mesh, const SystemMatrices &matrices, const ProblemSpec &problem,
                       Scheme scheme, double dt, double t_min, int quadrature_degree)
    : mesh_(mesh), m_(matrices), problem_(problem), scheme_(scheme), dt_(dt), t_min_(t_min),
      degree_(quadrature_degree)
{
  MAXFEEC_VERIFY(problem.dim == mesh.dim(), "problem and mesh dimensions differ");
  switch (scheme)
  {
    case Scheme::CrankNicholson:
      main_ = std::make_unique<StepSystem>(m_, crank_nicholson_coefficients(), dt);
      break;
    case Scheme::Leapfrog:
      main_ = std::make_unique<StepSystem>(m_, leapfrog_coefficients(), dt);
      bootstrap_ = std::make_unique<StepSystem>(m_, leapfrog_bootstrap_coefficients(), dt);
      break;
    case Scheme::BackwardEuler:
      main_ = std::make_unique<StepSystem>(m_, backward_euler_coefficients(), dt);
      break;
  }
}

namespace
{

ProxyFunction at_time(const SpaceTimeField &f, double t)
{
  return [&f, t](const Vec &x) { return f(x, t); };
}

}  // namespace

Vector Integrator::boundary_p(double t) const
{
  if (problem_.homogeneous)
  {
    return Vector::Zero(m_.dofs0.size());
  }
  return boundary_values(mesh_, m_.dofs0, at_time(problem_.p, t), degree_);
}

Vector Integrator::boundary_E(double t) const
{
  if (problem_.homogeneous)
  {
    return Vector::Zero(m_.dofs1.size());
  }
  return boundary_values(mesh_, m_.dofs1, at_time(problem_.E, t), degree_);
}

Vector Integrator::boundary_H(double t) const
{
  if (problem_.homogeneous)
  {
    return Vector::Zero(m_.dofs2.size());
  }
  return boundary_values(mesh_, m_.dofs2, at_time(problem_.H, t), degree_);
}

FieldState Integrator::initial_state() const
{
  const double t = t_min_;
  FieldState s;
  s.p = l2_project_constrained(mesh_, m_.dofs0, at_time(problem_.p, t), CellCoefficient::constant(1.0),
                               boundary_p(t));
  s.E = l2_project_constrained(mesh_, m_.dofs1, at_time(problem_.E, t), CellCoefficient::constant(1.0),
                               boundary_E(t));
  s.H = l2_project_constrained(mesh_, m_.dofs2, at_time(problem_.H, t), CellCoefficient::constant(1.0),
                               boundary_H(t));
  return s;
}

Vector Integrator::load(const DofMap &dofs, const SpaceTimeField &f,
                        const std::vector<std::pair<double, double>> &times) const
{
  Vector b = Vector::Zero(dofs.size());
  for (const auto &[level, weight] : times)
  {
    b += weight * assemble_load(mesh_, dofs, at_time(f, time(level)), CellCoefficient::constant(1.0),
                                degree_);
  }
  return b;
}

FieldState Integrator::solve_step(const StepSystem &sys, const FieldState &old, double new_p,
                                  double new_E, double new_H,
                                  const std::vector<std::pair<double, double>> &force_p,
                                  const std::vector<std::pair<double, double>> &force_E,
                                  const std::vector<std::pair<double, double>> &force_H) const
{
  const int n0 = m_.dofs0.size(), n1 = m_.dofs1.size(), n2 = m_.dofs2.size();
  Vector x_old(n0 + n1 + n2), fixed(n0 + n1 + n2), f(n0 + n1 + n2);
  x_old << old.p, old.E, old.H;
  fixed << boundary_p(time(new_p)), boundary_E(time(new_E)), boundary_H(time(new_H));
  f << load(m_.dofs0, problem_.f_p, force_p), load(m_.dofs1, problem_.f_E, force_E),
      load(m_.dofs2, problem_.f_H, force_H);
  const Vector x = sys.solve(x_old, fixed, f);
  FieldState s;
  s.p = x.head(n0);
  s.E = x.segment(n0, n1);
  s.H = x.tail(n2);
  s.level_p = new_p;
  s.level_E = new_E;
  s.level_H = new_H;
  return s;
}

FieldState Integrator::advance(const FieldState &s) const
{
  MAXFEEC_VERIFY(s.p.size() == m_.dofs0.size() && s.E.size() == m_.dofs1.size() &&
                     s.H.size() == m_.dofs2.size(),
                 "state vector lengths do not match the DOF maps");
  const double n = s.level_H;
  switch (scheme_)
  {
    case Scheme::CrankNicholson:
    {
      MAXFEEC_VERIFY(s.level_p == n && s.level_E == n && n == std::floor(n),
                     "Crank-Nicholson needs a state with equal integer time levels");
      const std::vector<std::pair<double, double>> avg{{n + 1, 0.5}, {n, 0.5}};
      return solve_step(*main_, s, n + 1, n + 1, n + 1, avg, avg, avg);
    }
    case Scheme::BackwardEuler:
    {
      MAXFEEC_VERIFY(s.level_p == n && s.level_E == n && n == std::floor(n),
                     "backward Euler needs a state with equal integer time levels");
      const std::vector<std::pair<double, double>> now{{n + 1, 1.0}};
      return solve_step(*main_, s, n + 1, n + 1, n + 1, now, now, now);
    }
    case Scheme::Leapfrog:
    {
      if (s.level_p == 0.0 && s.level_E == 0.0 && n == 0.0)
      {
        return solve_step(*bootstrap_, s, 0.5, 0.5, 1.0, {{0.0, 1.0}}, {{0.0, 1.0}}, {{0.5, 1.0}});
      }
      MAXFEEC_VERIFY(s.level_p == n - 0.5 && s.level_E == n - 0.5 && n == std::floor(n) && n >= 1,
                     "leapfrog needs p and E half a step behind an integer H level");
      return solve_step(*main_, s, n + 0.5, n + 0.5, n + 1, {{n, 1.0}}, {{n, 1.0}}, {{n + 0.5, 1.0}});
    }
  }
  throw InvalidArgument("unknown scheme");
}

int SchemeConfig::num_steps() const
{
  MAXFEEC_VERIFY(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  MAXFEEC_VERIFY(t_max > t_min, "final time must exceed the initial time");
  const double n = (t_max - t_min) / dt;
  const double rounded = std::round(n);
  MAXFEEC_VERIFY(rounded >= 1 && std::abs(n - rounded) <= 1e-9 * std::max(1.0, rounded),
                 "time interval is not an integer number of steps");
  return static_cast<int>(rounded);
}

SimulationResult run_simulation(const Mesh &mesh, const ProblemSpec &problem,
                                const SchemeConfig &config)
{
  using clock = std::chrono::steady_clock;
  const int steps = config.num_steps();
  const int degree = default_quadrature_degree(config.r);

  const auto t0 = clock::now();
  const SystemMatrices m = assemble_system(mesh, config.r, CellCoefficient::constant(problem.eps),
                                           CellCoefficient::constant(problem.mu));
  const Integrator integ(mesh, m, problem, config.scheme, config.dt, config.t_min, degree);
  const auto t1 = clock::now();

  SimulationResult out;
  out.trace.scheme = scheme_name(config.scheme);
  out.trace.problem_id = problem.id;
  FieldState state = integ.initial_state();
  out.trace.t.push_back(config.t_min);
  out.trace.energy.push_back(discrete_energy(state, m));
  for (int n = 0; n < steps; n++)
  {
    state = integ.advance(state);
    out.trace.t.push_back(integ.time(state.level_H));
    out.trace.energy.push_back(discrete_energy(state, m));
  }
  const auto t2 = clock::now();

  out.errors = error_norms(mesh, m, state, problem, integ.time(state.level_p),
                           integ.time(state.level_E), integ.time(state.level_H), degree);
  out.errors.dt = config.dt;
  out.final_state = std::move(state);
  out.assemble_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  return out;
}

}  // namespace maxfeec
