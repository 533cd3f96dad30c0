// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "maxfeec/system.hpp"

using namespace maxfeec;

namespace
{

// One time step after factorization (load assembly, boundary traces, triangular solves).
void BM_Step(benchmark::State &state)
{
  const int id = static_cast<int>(state.range(0));
  const Scheme scheme = static_cast<Scheme>(state.range(1));
  const ProblemSpec &problem = get_problem(id);
  const Mesh mesh = problem.dim == 2 ? generate_unit_square(16) : generate_unit_cube(3);
  const SystemMatrices m = assemble_system(mesh, 2, CellCoefficient::constant(problem.eps),
                                           CellCoefficient::constant(problem.mu));
  const Integrator integ(mesh, m, problem, scheme, 0.01, problem.t_min, default_quadrature_degree(2));
  FieldState s = integ.advance(integ.initial_state());
  for (auto _ : state)
  {
    s = integ.advance(s);
    benchmark::DoNotOptimize(s.H.data());
  }
}
BENCHMARK(BM_Step)
    ->Args({1, static_cast<int>(Scheme::CrankNicholson)})
    ->Args({1, static_cast<int>(Scheme::Leapfrog)})
    ->Args({3, static_cast<int>(Scheme::CrankNicholson)})
    ->Args({2, static_cast<int>(Scheme::CrankNicholson)})
    ->Args({4, static_cast<int>(Scheme::BackwardEuler)})
    ->Unit(benchmark::kMillisecond);

// Building and factorizing the monolithic step system.
void BM_Factorize(benchmark::State &state)
{
  const Mesh mesh = generate_unit_square(static_cast<int>(state.range(0)));
  const SystemMatrices m = assemble_system(mesh, 2, CellCoefficient::constant(1.0), CellCoefficient::constant(1.0));
  for (auto _ : state)
  {
    StepSystem sys(m, crank_nicholson_coefficients(), 0.01);
    benchmark::DoNotOptimize(sys.interior().data());
  }
}
BENCHMARK(BM_Factorize)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
