// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_MESH_HPP
#define MAXFEEC_MESH_HPP

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "maxfeec/common.hpp"

namespace maxfeec
{

// A simplex as an ascending tuple of vertex indices; unused trailing entries are -1.
using SimplexKey = std::array<int, 4>;

//
// Oriented simplicial complex of dimension 2 (triangles) or 3 (tetrahedra).
//
// Every simplex is oriented by ascending vertex index. Cells keep the order they were
// given in; the k-skeletons are sorted lexicographically and indexed, and each cell
// records the global index of every one of its sub-simplices in the local order given
// by local_subsimplices(). Immutable once built.
//
class Mesh
{
  friend Mesh build_skeleton(int, std::vector<Vec>, std::vector<SimplexKey>);

public:
  int dim() const { return dim_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_simplices(int k) const { return static_cast<int>(skeleton_[k].size()); }

  const Vec &vertex(int i) const { return vertices_[i]; }
  const std::vector<Vec> &vertices() const { return vertices_; }

  // Vertex tuple of a cell (ascending, dim + 1 entries).
  std::span<const int> cell(int c) const { return {cells_[c].data(), std::size_t(dim_ + 1)}; }

  // Vertex tuple of the i-th k-simplex.
  std::span<const int> simplex(int k, int i) const
  {
    return {skeleton_[k][i].data(), std::size_t(k + 1)};
  }

  // Index of a k-simplex given its ascending vertex tuple, or -1 if absent.
  int find(std::span<const int> vertices) const;

  // Global indices of the k-sub-simplices of cell c, in local lexicographic order.
  std::span<const int> cell_subsimplices(int c, int k) const
  {
    const auto &v = cell_sub_[k];
    const std::size_t n = cell_sub_stride_[k];
    return {v.data() + c * n, n};
  }

  // Relative orientation of the local sub-simplex against its global orientation.
  int cell_subsimplex_sign(int c, int k, int local) const
  {
    return cell_sub_sign_[k][c * cell_sub_stride_[k] + local];
  }

  // Incidence sign of the facet opposite local vertex q in the boundary of a cell.
  static int facet_incidence(int q) { return (q % 2 == 0) ? 1 : -1; }

  bool on_boundary(int k, int i) const { return boundary_[k][i] != 0; }
  int num_boundary(int k) const;

  // Sign of the Jacobian determinant of the ascending-vertex affine map.
  int cell_orientation(int c) const { return orientation_[c]; }
  double cell_volume(int c) const { return volume_[c]; }

  // Longest edge length over the mesh.
  double max_edge_length() const;

  // V - E + F (- T).
  int euler_characteristic() const;

private:
  Mesh() = default;

  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<SimplexKey> cells_;
  std::array<std::vector<SimplexKey>, 4> skeleton_;
  std::array<std::map<SimplexKey, int>, 4> lookup_;
  std::array<std::vector<int>, 4> cell_sub_;
  std::array<std::vector<int>, 4> cell_sub_sign_;
  std::array<std::size_t, 4> cell_sub_stride_{};
  std::array<std::vector<char>, 4> boundary_;
  std::vector<int> orientation_;
  std::vector<double> volume_;
};

// Build the skeletons, incidence signs and boundary flags of a simplicial complex.
// Cells must be strictly ascending tuples of dim + 1 vertex indices. Throws
// InvalidArgument on duplicate cells, degenerate cells, unreferenced vertices or
// a (dim-1)-simplex with more than two cofaces.
Mesh build_skeleton(int dim, std::vector<Vec> vertices, std::vector<SimplexKey> cells);

// Structured n x n grid on [0,1]^2, each square split along its (i,j)-(i+1,j+1) diagonal.
Mesh generate_unit_square(int n);

// Structured n x n x n grid on [0,1]^3, each cube split into 6 Kuhn tetrahedra around the
// main diagonal.
Mesh generate_unit_cube(int n);

// Text format: "dim V C", then V lines of coordinates, then C lines of dim+1 ascending
// 0-based vertex indices. '#' starts a comment.
Mesh read_mesh(const std::string &text);
std::string write_mesh(const Mesh &mesh);

}  // namespace maxfeec

#endif  // MAXFEEC_MESH_HPP
