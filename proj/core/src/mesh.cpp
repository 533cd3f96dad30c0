// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/Dense>

#include "maxfeec/simplex.hpp"

namespace maxfeec
{

namespace
{

SimplexKey MakeKey(std::span<const int> vertices)
{
  SimplexKey key{-1, -1, -1, -1};
  std::copy(vertices.begin(), vertices.end(), key.begin());
  return key;
}

double Factorial(int n)
{
  double f = 1.0;
  for (int i = 2; i <= n; i++)
  {
    f *= i;
  }
  return f;
}

}  // namespace

int Mesh::find(std::span<const int> vertices) const
{
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k < 0 || k > dim_)
  {
    return -1;
  }
  auto it = lookup_[k].find(MakeKey(vertices));
  return it == lookup_[k].end() ? -1 : it->second;
}

int Mesh::num_boundary(int k) const
{
  return static_cast<int>(std::count(boundary_[k].begin(), boundary_[k].end(), 1));
}

double Mesh::max_edge_length() const
{
  double h = 0.0;
  for (int e = 0; e < num_simplices(1); e++)
  {
    auto s = simplex(1, e);
    h = std::max(h, (vertices_[s[1]] - vertices_[s[0]]).norm());
  }
  return h;
}

int Mesh::euler_characteristic() const
{
  int chi = 0;
  for (int k = 0; k <= dim_; k++)
  {
    chi += (k % 2 == 0 ? 1 : -1) * num_simplices(k);
  }
  return chi;
}

Mesh build_skeleton(int dim, std::vector<Vec> vertices, std::vector<SimplexKey> cells)
{
  MAXFEEC_VERIFY(dim == 2 || dim == 3, "mesh dimension must be 2 or 3");
  const int nv = static_cast<int>(vertices.size());
  for (const auto &v : vertices)
  {
    MAXFEEC_VERIFY(v.size() == dim, "vertex coordinate count does not match dimension");
  }
  MAXFEEC_VERIFY(!cells.empty(), "mesh has no cells");

  Mesh mesh;
  mesh.dim_ = dim;
  mesh.vertices_ = std::move(vertices);
  mesh.cells_ = std::move(cells);

  std::vector<char> referenced(nv, 0);
  for (const auto &c : mesh.cells_)
  {
    for (int i = 0; i <= dim; i++)
    {
      MAXFEEC_VERIFY(c[i] >= 0 && c[i] < nv, "cell references vertex index out of range");
      MAXFEEC_VERIFY(i == 0 || c[i - 1] < c[i], "cell vertex tuple is not strictly ascending");
      referenced[c[i]] = 1;
    }
    for (int i = dim + 1; i < 4; i++)
    {
      MAXFEEC_VERIFY(c[i] == -1, "cell has too many vertices for the mesh dimension");
    }
  }
  MAXFEEC_VERIFY(std::all_of(referenced.begin(), referenced.end(), [](char r) { return r; }),
                 "mesh has vertices not referenced by any cell");

  // Collect and sort every k-simplex.
  for (int k = 0; k <= dim; k++)
  {
    std::vector<SimplexKey> keys;
    const auto &subs = local_subsimplices(dim + 1, k + 1);
    keys.reserve(mesh.cells_.size() * subs.size());
    for (const auto &c : mesh.cells_)
    {
      for (const auto &s : subs)
      {
        SimplexKey key{-1, -1, -1, -1};
        for (int j = 0; j <= k; j++)
        {
          key[j] = c[s[j]];
        }
        keys.push_back(key);
      }
    }
    std::sort(keys.begin(), keys.end());
    if (k == dim)
    {
      MAXFEEC_VERIFY(std::adjacent_find(keys.begin(), keys.end()) == keys.end(),
                     "mesh contains duplicate cells");
    }
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    mesh.skeleton_[k] = std::move(keys);
    for (int i = 0; i < static_cast<int>(mesh.skeleton_[k].size()); i++)
    {
      mesh.lookup_[k].emplace(mesh.skeleton_[k][i], i);
    }
  }

  // Cell to sub-simplex incidence. Local sub-simplices inherit ascending order from the
  // cell, so the relative sign is +1 whenever the global tuple is ascending too.
  const int nc = mesh.num_cells();
  for (int k = 0; k <= dim; k++)
  {
    const auto &subs = local_subsimplices(dim + 1, k + 1);
    mesh.cell_sub_stride_[k] = subs.size();
    mesh.cell_sub_[k].resize(nc * subs.size());
    mesh.cell_sub_sign_[k].resize(nc * subs.size());
    for (int c = 0; c < nc; c++)
    {
      for (std::size_t l = 0; l < subs.size(); l++)
      {
        std::array<int, 4> local_order{};
        for (int j = 0; j <= k; j++)
        {
          local_order[j] = mesh.cells_[c][subs[l][j]];
        }
        // Parity of the permutation sorting the local order into the global key.
        int inversions = 0;
        for (int a = 0; a <= k; a++)
        {
          for (int b = a + 1; b <= k; b++)
          {
            inversions += local_order[a] > local_order[b];
          }
        }
        std::sort(local_order.begin(), local_order.begin() + k + 1);
        const int idx = mesh.find({local_order.data(), std::size_t(k + 1)});
        mesh.cell_sub_[k][c * subs.size() + l] = idx;
        mesh.cell_sub_sign_[k][c * subs.size() + l] = (inversions % 2 == 0) ? 1 : -1;
      }
    }
  }

  // Facets with a single coface lie on the boundary; lower simplices inherit the flag.
  std::vector<int> cofaces(mesh.num_simplices(dim - 1), 0);
  for (int c = 0; c < nc; c++)
  {
    for (int f : mesh.cell_subsimplices(c, dim - 1))
    {
      cofaces[f]++;
    }
  }
  for (int k = 0; k <= dim; k++)
  {
    mesh.boundary_[k].assign(mesh.num_simplices(k), 0);
  }
  for (int f = 0; f < mesh.num_simplices(dim - 1); f++)
  {
    MAXFEEC_VERIFY(cofaces[f] <= 2, "non-manifold mesh: a facet has more than two cofaces");
    if (cofaces[f] != 1)
    {
      continue;
    }
    mesh.boundary_[dim - 1][f] = 1;
    auto verts = mesh.simplex(dim - 1, f);
    for (int k = 0; k < dim - 1; k++)
    {
      for (const auto &s : local_subsimplices(dim, k + 1))
      {
        std::array<int, 4> sub{};
        for (int j = 0; j <= k; j++)
        {
          sub[j] = verts[s[j]];
        }
        mesh.boundary_[k][mesh.find({sub.data(), std::size_t(k + 1)})] = 1;
      }
    }
  }

  mesh.orientation_.resize(nc);
  mesh.volume_.resize(nc);
  for (int c = 0; c < nc; c++)
  {
    Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
    for (int i = 0; i < dim; i++)
    {
      jac.col(i).head(dim) =
          mesh.vertices_[mesh.cells_[c][i + 1]] - mesh.vertices_[mesh.cells_[c][0]];
    }
    const double det = jac.topLeftCorner(dim, dim).determinant();
    MAXFEEC_VERIFY(det != 0.0, "degenerate cell with zero volume");
    mesh.orientation_[c] = det > 0 ? 1 : -1;
    mesh.volume_[c] = std::abs(det) / Factorial(dim);
  }
  return mesh;
}

Mesh generate_unit_square(int n)
{
  MAXFEEC_VERIFY(n >= 1, "invalid mesh resolution: n must be at least 1");
  auto id = [n](int i, int j) { return i + (n + 1) * j; };
  std::vector<Vec> vertices;
  vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; j++)
  {
    for (int i = 0; i <= n; i++)
    {
      Vec x(2);
      x << double(i) / n, double(j) / n;
      vertices.push_back(x);
    }
  }
  std::vector<SimplexKey> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; j++)
  {
    for (int i = 0; i < n; i++)
    {
      const int v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
      cells.push_back({v00, v10, v11, -1});
      cells.push_back({v00, v01, v11, -1});
    }
  }
  return build_skeleton(2, std::move(vertices), std::move(cells));
}

Mesh generate_unit_cube(int n)
{
  MAXFEEC_VERIFY(n >= 1, "invalid mesh resolution: n must be at least 1");
  auto id = [n](int i, int j, int k) { return i + (n + 1) * (j + (n + 1) * k); };
  std::vector<Vec> vertices;
  vertices.reserve((n + 1) * (n + 1) * (n + 1));
  for (int k = 0; k <= n; k++)
  {
    for (int j = 0; j <= n; j++)
    {
      for (int i = 0; i <= n; i++)
      {
        Vec x(3);
        x << double(i) / n, double(j) / n, double(k) / n;
        vertices.push_back(x);
      }
    }
  }
  // Each tetrahedron follows a monotone lattice path from the low to the high corner;
  // vertex indices increase along the path, so the tuples come out ascending.
  const std::array<std::array<int, 3>, 6> paths = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<SimplexKey> cells;
  cells.reserve(6 * n * n * n);
  for (int k = 0; k < n; k++)
  {
    for (int j = 0; j < n; j++)
    {
      for (int i = 0; i < n; i++)
      {
        for (const auto &path : paths)
        {
          std::array<int, 3> p{i, j, k};
          SimplexKey tet{id(i, j, k), 0, 0, 0};
          for (int s = 0; s < 3; s++)
          {
            p[path[s]]++;
            tet[s + 1] = id(p[0], p[1], p[2]);
          }
          cells.push_back(tet);
        }
      }
    }
  }
  return build_skeleton(3, std::move(vertices), std::move(cells));
}

Mesh read_mesh(const std::string &text)
{
  // Strip comments, then read whitespace-separated tokens.
  std::string clean;
  clean.reserve(text.size());
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line))
  {
    clean += line.substr(0, line.find('#'));
    clean += '\n';
  }
  std::istringstream in(clean);
  long dim = 0, nv = 0, nc = 0;
  MAXFEEC_VERIFY(static_cast<bool>(in >> dim >> nv >> nc), "malformed mesh header");
  MAXFEEC_VERIFY(dim == 2 || dim == 3, "malformed mesh header: dimension must be 2 or 3");
  MAXFEEC_VERIFY(nv > 0 && nc > 0, "malformed mesh header: counts must be positive");

  std::vector<Vec> vertices(nv, Vec(dim));
  for (long i = 0; i < nv; i++)
  {
    for (long d = 0; d < dim; d++)
    {
      MAXFEEC_VERIFY(static_cast<bool>(in >> vertices[i][d]), "malformed vertex coordinates");
    }
  }
  std::vector<SimplexKey> cells(nc, SimplexKey{-1, -1, -1, -1});
  std::string token;
  for (long c = 0; c < nc; c++)
  {
    // Read the whole line so an extra index (3D cell in a 2D file) is detected.
    std::string cell_line;
    do
    {
      MAXFEEC_VERIFY(static_cast<bool>(std::getline(in, cell_line)), "missing cell lines");
    } while (cell_line.find_first_not_of(" \t\r") == std::string::npos);
    std::istringstream cl(cell_line);
    std::vector<long> idx;
    long value = 0;
    while (cl >> value)
    {
      idx.push_back(value);
    }
    MAXFEEC_VERIFY(cl.eof(), "malformed cell index");
    MAXFEEC_VERIFY(static_cast<long>(idx.size()) == dim + 1,
                   "cell has " + std::to_string(idx.size()) + " indices, expected " +
                       std::to_string(dim + 1));
    for (long j = 0; j <= dim; j++)
    {
      MAXFEEC_VERIFY(idx[j] >= 0 && idx[j] < nv, "cell references vertex index out of range");
      MAXFEEC_VERIFY(j == 0 || idx[j - 1] < idx[j],
                     "cell vertex tuple is not strictly ascending");
      cells[c][j] = static_cast<int>(idx[j]);
    }
  }
  MAXFEEC_VERIFY(!(in >> token), "trailing data after the last cell");
  return build_skeleton(static_cast<int>(dim), std::move(vertices), std::move(cells));
}

std::string write_mesh(const Mesh &mesh)
{
  std::ostringstream out;
  out << std::setprecision(17);
  out << mesh.dim() << ' ' << mesh.num_vertices() << ' ' << mesh.num_cells() << '\n';
  for (const auto &v : mesh.vertices())
  {
    for (int d = 0; d < mesh.dim(); d++)
    {
      out << (d ? " " : "") << v[d];
    }
    out << '\n';
  }
  for (int c = 0; c < mesh.num_cells(); c++)
  {
    auto cell = mesh.cell(c);
    for (std::size_t j = 0; j < cell.size(); j++)
    {
      out << (j ? " " : "") << cell[j];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace maxfeec
