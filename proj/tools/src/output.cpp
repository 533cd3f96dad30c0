// SPDX-License-Identifier: Apache-2.0

#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

#include <fmt/format.h>

namespace maxfeec::tools
{

namespace
{

std::ofstream open_output(const std::filesystem::path &file)
{
  std::ofstream out(file, std::ios::binary);
  MAXFEEC_VERIFY(out.good(), "cannot write " + file.string());
  return out;
}

std::string vec3(const Vec &v)
{
  double c[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < v.size(); i++)
  {
    c[i] = v[i];
  }
  return fmt::format("{:.17g} {:.17g} {:.17g}", c[0], c[1], c[2]);
}

}  // namespace

void write_energy_csv(const std::filesystem::path &file, const EnergyTrace &trace)
{
  std::ofstream out = open_output(file);
  out << "t,energy\n";
  for (std::size_t i = 0; i < trace.t.size(); i++)
  {
    out << fmt::format("{:.17g},{:.17g}\n", trace.t[i], trace.energy[i]);
  }
}

void write_sweep_csv(const std::filesystem::path &file, const std::vector<SweepPoint> &points)
{
  std::ofstream out = open_output(file);
  out << "param,e_p,e_E,e_H,total\n";
  for (const SweepPoint &s : points)
  {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.param, s.errors.e_p,
                       s.errors.e_E, s.errors.e_H, s.errors.total());
  }
}

void write_vtk(const std::filesystem::path &file, const Mesh &mesh, const SystemMatrices &m,
               const FieldState &state)
{
  std::ofstream out = open_output(file);
  const int dim = mesh.dim();
  const int nc = mesh.num_cells();
  out << "# vtk DataFile Version 3.0\nmaxfeec fields\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec &v : mesh.vertices())
  {
    out << vec3(v) << "\n";
  }
  out << "CELLS " << nc << " " << nc * (dim + 2) << "\n";
  for (int c = 0; c < nc; c++)
  {
    out << dim + 1;
    for (int v : mesh.cell(c))
    {
      out << " " << v;
    }
    out << "\n";
  }
  out << "CELL_TYPES " << nc << "\n";
  for (int c = 0; c < nc; c++)
  {
    out << (dim == 2 ? 5 : 10) << "\n";
  }

  std::vector<double> centroid(dim + 1, 1.0 / (dim + 1));
  out << "CELL_DATA " << nc << "\nSCALARS p double 1\nLOOKUP_TABLE default\n";
  for (int c = 0; c < nc; c++)
  {
    out << fmt::format("{:.17g}\n", evaluate_field(mesh, m.dofs0, state.p, c, centroid)[0]);
  }
  out << "VECTORS E double\n";
  for (int c = 0; c < nc; c++)
  {
    out << vec3(evaluate_field(mesh, m.dofs1, state.E, c, centroid)) << "\n";
  }
  if (dim == 2)
  {
    out << "SCALARS H double 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < nc; c++)
    {
      out << fmt::format("{:.17g}\n", evaluate_field(mesh, m.dofs2, state.H, c, centroid)[0]);
    }
  }
  else
  {
    out << "VECTORS H double\n";
    for (int c = 0; c < nc; c++)
    {
      out << vec3(evaluate_field(mesh, m.dofs2, state.H, c, centroid)) << "\n";
    }
  }
}

}  // namespace maxfeec::tools
