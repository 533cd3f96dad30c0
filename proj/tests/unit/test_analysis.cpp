// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "maxfeec/analysis.hpp"
#include "maxfeec/system.hpp"

using namespace maxfeec;

TEST(EstimateOrder, ExactSlopes)
{
  EXPECT_NEAR(estimate_order({{1.0, 1.0}, {0.5, 0.25}}), 2.0, 1e-14);
  EXPECT_NEAR(estimate_order({{0.1, 3.0}, {0.05, 3.0}, {0.025, 3.0}}), 0.0, 1e-14);
  EXPECT_NEAR(estimate_order({{0.2, 0.008}, {0.1, 0.001}, {0.05, 0.000125}}), 3.0, 1e-12);
}

TEST(EstimateOrder, LeastSquaresFit)
{
  // log e = 1.5 log h + noise symmetric about the line: slope stays 1.5.
  const double k = std::exp(0.01);
  const double s = estimate_order({{1.0, 1.0 * k}, {0.5, std::pow(0.5, 1.5) / k / k}, {0.25, std::pow(0.25, 1.5) * k}});
  EXPECT_NEAR(s, 1.5, 1e-12);
}

TEST(EstimateOrder, RejectsBadInput)
{
  EXPECT_THROW(estimate_order({{1.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(estimate_order({{1.0, 1.0}, {0.5, 0.0}}), InvalidArgument);
  EXPECT_THROW(estimate_order({{1.0, 1.0}, {-0.5, 1.0}}), InvalidArgument);
  EXPECT_THROW(estimate_order({{0.5, 1.0}, {0.5, 2.0}}), InvalidArgument);
}

TEST(DiscreteEnergy, ScalingAndParts)
{
  const Mesh mesh = generate_unit_square(3);
  const SystemMatrices m = assemble_system(mesh, 1, CellCoefficient::constant(2.0),
                                           CellCoefficient::constant(0.5));
  FieldState s;
  s.p = Vector::LinSpaced(m.dofs0.size(), 0.0, 1.0);
  s.E = Vector::LinSpaced(m.dofs1.size(), -1.0, 1.0);
  s.H = Vector::Constant(m.dofs2.size(), 0.3);
  const EnergyParts parts = discrete_energy_parts(s, m);
  EXPECT_NEAR(parts.total(), discrete_energy(s, m), 1e-14);
  EXPECT_NEAR(parts.p, s.p.dot(m.M0_eps_inv * s.p), 1e-14);
  EXPECT_NEAR(parts.E, s.E.dot(m.M1_eps * s.E), 1e-14);
  EXPECT_NEAR(parts.H, s.H.dot(m.M2_mu * s.H), 1e-14);

  FieldState twice = s;
  twice.p *= 2;
  twice.E *= 2;
  twice.H *= 2;
  EXPECT_NEAR(discrete_energy(twice, m), 4 * discrete_energy(s, m), 1e-12);

  FieldState zero = s;
  zero.p.setZero();
  zero.E.setZero();
  zero.H.setZero();
  EXPECT_EQ(discrete_energy(zero, m), 0.0);

  s.H.resize(1);
  EXPECT_THROW(discrete_energy(s, m), InvalidArgument);
}

TEST(DiscreteEnergy, ProjectionMatchesExact)
{
  // Example 1 has energy 1; the projected initial data should be close on a fine mesh.
  const Mesh mesh = generate_unit_square(16);
  const ProblemSpec problem = get_problem(1);
  const SystemMatrices m = assemble_system(mesh, 2, CellCoefficient::constant(1.0),
                                           CellCoefficient::constant(1.0));
  const Integrator integ(mesh, m, problem, Scheme::CrankNicholson, 0.01, 0.0, 6);
  EXPECT_NEAR(discrete_energy(integ.initial_state(), m), 1.0, 1e-4);
}

TEST(ErrorNorms, ProjectionErrorsShrink)
{
  const ProblemSpec problem = get_problem(1);
  std::vector<std::pair<double, double>> samples;
  for (int n : {4, 8, 16})
  {
    const Mesh mesh = generate_unit_square(n);
    const SystemMatrices m = assemble_system(mesh, 1, CellCoefficient::constant(1.0),
                                             CellCoefficient::constant(1.0));
    const Integrator integ(mesh, m, problem, Scheme::CrankNicholson, 0.01, 0.0, 4);
    const ErrorReport e = error_norms(mesh, m, integ.initial_state(), problem, 0, 0, 0, 4);
    EXPECT_NEAR(e.h, std::sqrt(2.0) / n, 1e-14);
    samples.emplace_back(e.h, e.total());
  }
  EXPECT_NEAR(estimate_order(samples), 1.0, 0.15);
}

TEST(ErrorNorms, ExactInterpolantHasNoError)
{
  // Zero fields against the zero problem.
  const Mesh mesh = generate_unit_cube(1);
  const SystemMatrices m = assemble_system(mesh, 1, CellCoefficient::constant(1.0),
                                           CellCoefficient::constant(1.0));
  FieldState s;
  s.p = Vector::Zero(m.dofs0.size());
  s.E = Vector::Zero(m.dofs1.size());
  s.H = Vector::Zero(m.dofs2.size());
  const ErrorReport e = error_norms(mesh, m, s, zero_problem(3), 0, 0, 0, 4);
  EXPECT_EQ(e.total(), 0.0);
}
