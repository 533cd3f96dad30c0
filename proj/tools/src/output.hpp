// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_TOOLS_OUTPUT_HPP
#define MAXFEEC_TOOLS_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "maxfeec/analysis.hpp"
#include "maxfeec/assembly.hpp"

namespace maxfeec::tools
{

struct SweepPoint
{
  double param = 0.0;
  ErrorReport errors;
};

// Text output is fixed-format (%.17g) so reruns are byte-identical.
void write_energy_csv(const std::filesystem::path &file, const EnergyTrace &trace);
void write_sweep_csv(const std::filesystem::path &file, const std::vector<SweepPoint> &points);

// Legacy ASCII unstructured grid with p, E, H sampled at cell centroids.
void write_vtk(const std::filesystem::path &file, const Mesh &mesh, const SystemMatrices &m,
               const FieldState &state);

}  // namespace maxfeec::tools

#endif  // MAXFEEC_TOOLS_OUTPUT_HPP
