// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "maxfeec/assembly.hpp"

using namespace maxfeec;

namespace
{

void BM_AssembleSquare(benchmark::State &state)
{
  const Mesh mesh = generate_unit_square(static_cast<int>(state.range(0)));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state)
  {
    SystemMatrices m = assemble_system(mesh, r, CellCoefficient::constant(1.0), CellCoefficient::constant(1.0));
    benchmark::DoNotOptimize(m.K.nonZeros());
  }
  state.counters["cells"] = mesh.num_cells();
}
BENCHMARK(BM_AssembleSquare)->Args({16, 1})->Args({16, 2})->Args({32, 2})->Unit(benchmark::kMillisecond);

void BM_AssembleCube(benchmark::State &state)
{
  const Mesh mesh = generate_unit_cube(static_cast<int>(state.range(0)));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state)
  {
    SystemMatrices m = assemble_system(mesh, r, CellCoefficient::constant(2.0), CellCoefficient::constant(1.0));
    benchmark::DoNotOptimize(m.K.nonZeros());
  }
  state.counters["cells"] = mesh.num_cells();
}
BENCHMARK(BM_AssembleCube)->Args({3, 1})->Args({3, 2})->Args({6, 1})->Unit(benchmark::kMillisecond);

void BM_MassMatrix(benchmark::State &state)
{
  const Mesh mesh = generate_unit_cube(4);
  const DofMap dofs = build_dof_map(mesh, static_cast<int>(state.range(0)), 2);
  for (auto _ : state)
  {
    SparseMatrix m = assemble_mass(mesh, dofs, CellCoefficient::constant(1.0));
    benchmark::DoNotOptimize(m.nonZeros());
  }
}
BENCHMARK(BM_MassMatrix)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
