// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "maxfeec/assembly.hpp"
#include "maxfeec/forms.hpp"
#include "maxfeec/mesh.hpp"
#include "maxfeec/simplex.hpp"
#include "maxfeec/system.hpp"
#include "maxfeec/whitney.hpp"

namespace maxfeec
{

namespace
{

struct Space
{
  int dim, k, r;
};

std::vector<Space> all_spaces()
{
  std::vector<Space> out;
  for (int dim : {2, 3})
  {
    for (int k = 0; k <= dim; k++)
    {
      for (int r : {1, 2})
      {
        out.push_back({dim, k, r});
      }
    }
  }
  return out;
}

CheckResult guarded(const std::string &name, const std::function<std::string(bool &)> &body)
{
  CheckResult out{name, false, ""};
  try
  {
    bool pass = true;
    out.detail = body(pass);
    out.pass = pass;
  }
  catch (const std::exception &e)
  {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  return out;
}

std::string format(const char *label, double value, double tol)
{
  std::ostringstream s;
  s << label << " " << value << " (tol " << tol << ")";
  return s.str();
}

std::vector<Vec> skewed_simplex(int dim)
{
  std::vector<Vec> v(dim + 1, Vec::Zero(dim));
  if (dim == 2)
  {
    v[0] << 0.3, -0.2;
    v[1] << 1.4, 0.1;
    v[2] << 0.5, 0.9;
  }
  else
  {
    v[0] << 0.1, 0.2, -0.1;
    v[1] << 1.2, 0.0, 0.3;
    v[2] << 0.4, 1.1, 0.0;
    v[3] << 0.2, 0.3, 0.8;
  }
  return v;
}

std::vector<double> to_bary(const std::vector<Vec> &verts, const Vec &x)
{
  const int dim = static_cast<int>(x.size());
  Eigen::MatrixXd a(dim + 1, dim + 1);
  Eigen::VectorXd b(dim + 1);
  for (int i = 0; i <= dim; i++)
  {
    a(0, i) = 1.0;
    a.block(1, i, dim, 1) = verts[i];
  }
  b[0] = 1.0;
  b.tail(dim) = x;
  const Eigen::VectorXd l = a.fullPivLu().solve(b);
  return {l.data(), l.data() + dim + 1};
}

std::vector<Vec> sub_vertices(const std::vector<Vec> &verts, const DofDescriptor &dof)
{
  std::vector<Vec> out;
  for (int v : local_subsimplices(static_cast<int>(verts.size()), dof.sub_dim + 1)[dof.sub_local])
  {
    out.push_back(verts[v]);
  }
  return out;
}

// Moment matrix M(i, j) = dof_i(phi_j) on a physical simplex, by quadrature.
Eigen::MatrixXd numeric_moments(const LocalBasis &b, const std::vector<Vec> &verts)
{
  const Eigen::MatrixXd grads = barycentric_gradients(verts);
  Eigen::MatrixXd m(b.size(), b.size());
  for (int j = 0; j < b.size(); j++)
  {
    const ProxyFunction f = [&](const Vec &x) { return b.eval(j, to_bary(verts, x), grads); };
    for (int i = 0; i < b.size(); i++)
    {
      const DofDescriptor &dof = b.dofs()[i];
      m(i, j) = apply_dof_to_field(dof, b.dim(), b.k(), sub_vertices(verts, dof), f, 2 * b.r() + 2);
    }
  }
  return m;
}

double factorial(int n)
{
  double f = 1.0;
  for (int i = 2; i <= n; i++)
  {
    f *= i;
  }
  return f;
}

double max_abs(const SparseMatrix &a)
{
  return a.nonZeros() == 0 ? 0.0 : Eigen::MatrixXd(a).cwiseAbs().maxCoeff();
}

}  // namespace

CheckResult check_quadrature_exactness(const QuadratureRule &rule)
{
  return guarded("quadrature-exactness",
                 [&](bool &pass)
                 {
                   // int_T lambda^beta = beta! m! / (|beta| + m)! * |T|, with |T| = 1/m!.
                   const int m = rule.dim;
                   MAXFEEC_VERIFY(rule.points.size() == rule.weights.size() * (m + 1),
                                  "quadrature points and weights disagree in size");
                   double worst = 0.0;
                   std::vector<int> beta(m + 1, 0);
                   std::function<void(int, int)> visit = [&](int slot, int left)
                   {
                     if (slot == m)
                     {
                       beta[m] = left;
                       double exact = 1.0, q = 0.0;
                       int total = 0;
                       for (int b : beta)
                       {
                         exact *= factorial(b);
                         total += b;
                       }
                       exact /= factorial(total + m);
                       for (int i = 0; i < rule.size(); i++)
                       {
                         double v = rule.weights[i];
                         for (int a = 0; a <= m; a++)
                         {
                           v *= std::pow(rule.point(i)[a], beta[a]);
                         }
                         q += v;
                       }
                       worst = std::max(worst, std::abs(q - exact));
                       return;
                     }
                     for (int b = 0; b <= left; b++)
                     {
                       beta[slot] = b;
                       visit(slot + 1, left - b);
                     }
                   };
                   for (int deg = 0; deg <= rule.degree; deg++)
                   {
                     visit(0, deg);
                   }
                   pass = worst <= 1e-13;
                   std::ostringstream s;
                   s << "dim " << m << " degree " << rule.degree << ": "
                     << format("max monomial error", worst, 1e-13);
                   return s.str();
                 });
}

CheckResult check_builtin_quadrature()
{
  return guarded("builtin-quadrature",
                 [](bool &pass)
                 {
                   int checked = 0;
                   for (int dim = 1; dim <= 3; dim++)
                   {
                     for (int deg = 0; deg <= 8; deg++)
                     {
                       const CheckResult r = check_quadrature_exactness(quadrature_rule(dim, deg));
                       if (!r.pass)
                       {
                         pass = false;
                         return r.detail;
                       }
                       checked++;
                     }
                   }
                   return std::to_string(checked) + " rules exact";
                 });
}

CheckResult check_dimension_counts()
{
  return guarded("dimension-counts",
                 [](bool &pass)
                 {
                   // C(r+k-1, k) C(dim+r, dim-k), evaluated independently of the basis.
                   for (const Space &s : all_spaces())
                   {
                     const int expected = binomial(s.r + s.k - 1, s.k) * binomial(s.dim + s.r, s.dim - s.k);
                     const LocalBasis &b = reference_basis(s.dim, s.k, s.r);
                     int from_subs = 0;
                     for (int m = s.k; m <= s.dim; m++)
                     {
                       from_subs += binomial(s.dim + 1, m + 1) * b.dofs_per_subsimplex(m);
                     }
                     if (b.size() != expected || from_subs != expected ||
                         trimmed_dimension(s.dim, s.k, s.r) != expected)
                     {
                       pass = false;
                       return "space (" + std::to_string(s.dim) + "," + std::to_string(s.k) + "," +
                              std::to_string(s.r) + ") has " + std::to_string(b.size()) +
                              " functions, expected " + std::to_string(expected);
                     }
                   }
                   return std::to_string(all_spaces().size()) + " spaces";
                 });
}

CheckResult check_unisolvence()
{
  return guarded("unisolvence",
                 [](bool &pass)
                 {
                   double worst = 0.0;
                   for (const Space &s : all_spaces())
                   {
                     const LocalBasis &b = reference_basis(s.dim, s.k, s.r);
                     const Eigen::MatrixXd m = numeric_moments(b, skewed_simplex(s.dim));
                     worst = std::max(
                         worst, (m - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff());
                   }
                   pass = worst <= 1e-10;
                   return format("max |dof_i(phi_j) - delta_ij|", worst, 1e-10);
                 });
}

CheckResult check_partition_of_unity()
{
  return guarded("partition-of-unity",
                 [](bool &pass)
                 {
                   // The 0-form interpolant of the constant 1 is 1 everywhere.
                   double worst = 0.0;
                   std::mt19937 gen(7);
                   std::uniform_real_distribution<double> u(0.01, 1.0);
                   for (int dim : {2, 3})
                   {
                     const std::vector<Vec> verts = skewed_simplex(dim);
                     const Eigen::MatrixXd grads = barycentric_gradients(verts);
                     for (int r : {1, 2})
                     {
                       const LocalBasis &b = reference_basis(dim, 0, r);
                       const ProxyFunction one = [](const Vec &) { return Vec::Constant(1, 1.0); };
                       std::vector<double> c(b.size());
                       for (int i = 0; i < b.size(); i++)
                       {
                         c[i] = apply_dof_to_field(b.dofs()[i], dim, 0, sub_vertices(verts, b.dofs()[i]), one, 6);
                       }
                       for (int trial = 0; trial < 20; trial++)
                       {
                         std::vector<double> l(dim + 1);
                         double sum = 0.0;
                         for (double &x : l)
                         {
                           sum += (x = u(gen));
                         }
                         for (double &x : l)
                         {
                           x /= sum;
                         }
                         double v = 0.0;
                         for (int i = 0; i < b.size(); i++)
                         {
                           v += c[i] * b.eval(i, l, grads)[0];
                         }
                         worst = std::max(worst, std::abs(v - 1.0));
                       }
                     }
                   }
                   pass = worst <= 1e-12;
                   return format("max |sum - 1|", worst, 1e-12);
                 });
}

CheckResult check_exterior_derivative_nilpotent()
{
  return guarded("d-squared-zero",
                 [](bool &pass)
                 {
                   double worst = 0.0;
                   for (int dim : {2, 3})
                   {
                     for (int r : {1, 2})
                     {
                       for (int k = 0; k + 2 <= dim; k++)
                       {
                         const Eigen::MatrixXd dd =
                             local_exterior_derivative(dim, k + 1, r) * local_exterior_derivative(dim, k, r);
                         worst = std::max(worst, dd.cwiseAbs().maxCoeff());
                       }
                       const Mesh mesh = dim == 2 ? generate_unit_square(2) : generate_unit_cube(1);
                       for (int k = 0; k + 2 <= dim; k++)
                       {
                         const DofMap a = build_dof_map(mesh, k, r), b = build_dof_map(mesh, k + 1, r),
                                      c = build_dof_map(mesh, k + 2, r);
                         const SparseMatrix dd = assemble_derivative(mesh, b, c) * assemble_derivative(mesh, a, b);
                         worst = std::max(worst, max_abs(dd));
                       }
                     }
                   }
                   pass = worst <= 1e-12;
                   return format("max |d d|", worst, 1e-12);
                 });
}

CheckResult check_mass_spd()
{
  return guarded("mass-spd",
                 [](bool &pass)
                 {
                   double min_eig = 1e300, asym = 0.0;
                   for (int dim : {2, 3})
                   {
                     const Mesh mesh = dim == 2 ? generate_unit_square(2) : generate_unit_cube(1);
                     for (int r : {1, 2})
                     {
                       for (int k = 0; k <= dim; k++)
                       {
                         const DofMap d = build_dof_map(mesh, k, r);
                         const Eigen::MatrixXd m(assemble_mass(mesh, d, CellCoefficient::constant(1.0)));
                         asym = std::max(asym, (m - m.transpose()).cwiseAbs().maxCoeff());
                         Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
                         min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
                       }
                     }
                   }
                   pass = asym <= 1e-14 && min_eig > 0.0;
                   std::ostringstream s;
                   s << "min eigenvalue " << min_eig << ", max asymmetry " << asym;
                   return s.str();
                 });
}

CheckResult check_grad_coupling_transpose()
{
  return guarded("grad-coupling-transpose",
                 [](bool &pass)
                 {
                   double worst = 0.0;
                   const double eps = 2.5;
                   for (int dim : {2, 3})
                   {
                     const Mesh mesh = dim == 2 ? generate_unit_square(3) : generate_unit_cube(2);
                     for (int r : {1, 2})
                     {
                       const SystemMatrices m = assemble_system(mesh, r, CellCoefficient::constant(eps),
                                                                CellCoefficient::constant(1.0));
                       const SparseMatrix gt = m.G.transpose();
                       worst = std::max(worst, max_abs(m.C - eps * gt));
                     }
                   }
                   pass = worst <= 1e-12;
                   return format("max |C - eps G'|", worst, 1e-12);
                 });
}

CheckResult check_curl_of_gradient()
{
  return guarded("curl-of-gradient",
                 [](bool &pass)
                 {
                   double worst = 0.0;
                   std::mt19937 gen(11);
                   std::uniform_real_distribution<double> u(-1.0, 1.0);
                   for (int dim : {2, 3})
                   {
                     const Mesh mesh = dim == 2 ? generate_unit_square(3) : generate_unit_cube(2);
                     for (int r : {1, 2})
                     {
                       const SystemMatrices m = assemble_system(mesh, r, CellCoefficient::constant(1.0),
                                                                CellCoefficient::constant(1.0));
                       for (int trial = 0; trial < 100; trial++)
                       {
                         const Vector q = Vector::NullaryExpr(m.dofs0.size(), [&]() { return u(gen); });
                         worst = std::max(worst, (m.K * (m.D0 * q)).lpNorm<Eigen::Infinity>());
                       }
                     }
                   }
                   pass = worst <= 1e-12;
                   return format("max |K D0 q|", worst, 1e-12);
                 });
}

CheckResult check_zero_state_invariance()
{
  return guarded("zero-state-invariance",
                 [](bool &pass)
                 {
                   for (int dim : {2, 3})
                   {
                     const Mesh mesh = dim == 2 ? generate_unit_square(2) : generate_unit_cube(1);
                     const ProblemSpec zero = zero_problem(dim);
                     const SystemMatrices m = assemble_system(mesh, 1, CellCoefficient::constant(1.0),
                                                              CellCoefficient::constant(1.0));
                     for (Scheme s : {Scheme::CrankNicholson, Scheme::Leapfrog, Scheme::BackwardEuler})
                     {
                       const Integrator integ(mesh, m, zero, s, 0.1, 0.0, 4);
                       FieldState state = integ.initial_state();
                       for (int n = 0; n < 3; n++)
                       {
                         state = integ.advance(state);
                       }
                       if (discrete_energy(state, m) != 0.0)
                       {
                         pass = false;
                         return scheme_name(s) + " moved away from the zero state";
                       }
                     }
                   }
                   return std::string("all schemes stay at zero");
                 });
}

CheckResult check_euler_characteristic()
{
  return guarded("euler-characteristic",
                 [](bool &pass)
                 {
                   for (int n : {1, 3})
                   {
                     if (generate_unit_square(n).euler_characteristic() != 1 ||
                         generate_unit_cube(n).euler_characteristic() != 1)
                     {
                       pass = false;
                       return "generated mesh with n = " + std::to_string(n) + " is not a ball";
                     }
                   }
                   return std::string("V - E + F (- T) = 1");
                 });
}

CheckResult check_mesh_text(const std::string &text)
{
  return guarded("mesh-file",
                 [&](bool &pass)
                 {
                   const Mesh mesh = read_mesh(text);
                   const int chi = mesh.euler_characteristic();
                   pass = chi == 1;
                   return std::to_string(mesh.num_cells()) + " cells, Euler characteristic " + std::to_string(chi);
                 });
}

std::vector<CheckResult> run_selftest(const SelftestOptions &options)
{
  std::vector<CheckResult> out;
  out.push_back(check_builtin_quadrature());
  if (options.quadrature)
  {
    out.push_back(check_quadrature_exactness(*options.quadrature));
  }
  out.push_back(check_euler_characteristic());
  if (options.mesh_text)
  {
    out.push_back(check_mesh_text(*options.mesh_text));
  }
  out.push_back(check_dimension_counts());
  out.push_back(check_unisolvence());
  out.push_back(check_partition_of_unity());
  out.push_back(check_exterior_derivative_nilpotent());
  out.push_back(check_mass_spd());
  out.push_back(check_grad_coupling_transpose());
  out.push_back(check_curl_of_gradient());
  out.push_back(check_zero_state_invariance());
  return out;
}

}  // namespace maxfeec
