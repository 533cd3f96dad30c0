// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/whitney.hpp"

#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>

#include "maxfeec/simplex.hpp"

namespace maxfeec
{

namespace
{

// Multi-indices over n entries with total degree `degree`.
std::vector<std::array<int, 4>> MultiIndices(int n, int degree)
{
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> current{};
  auto recurse = [&](auto &&self, int pos, int left) -> void
  {
    if (pos == n - 1)
    {
      current[pos] = left;
      out.push_back(current);
      current[pos] = 0;
      return;
    }
    for (int v = left; v >= 0; v--)
    {
      current[pos] = v;
      self(self, pos + 1, left - v);
    }
    current[pos] = 0;
  };
  recurse(recurse, 0, degree);
  return out;
}

// Basis of the moment weights P_q Lambda^l on an m-simplex, in its own barycentric
// coordinates. Only the cases reachable with r <= 2 are needed.
std::vector<BaryForm> MomentWeights(int m, int l, int q)
{
  std::vector<BaryForm> out;
  if (l == 0 && q == 0)
  {
    BaryForm one(m + 1, 0);
    one.add(1.0, {}, 0u);
    out.push_back(one);
  }
  else if (l == 0 && q == 1)
  {
    for (int j = 0; j <= m; j++)
    {
      BaryForm w(m + 1, 0);
      std::array<int, 4> power{};
      power[j] = 1;
      w.add(1.0, power, 0u);
      out.push_back(w);
    }
  }
  else if (l == 1 && q == 0)
  {
    for (int j = 1; j <= m; j++)
    {
      BaryForm w(m + 1, 1);
      w.add(1.0, {}, 1u << j);
      out.push_back(w);
    }
  }
  else
  {
    throw InvalidArgument("moment weights beyond polynomial order 2 are not implemented");
  }
  return out;
}

// Exterior algebra on R^m (m <= 3) with coefficients indexed by coordinate bitmask.
using AltForm = std::array<double, 8>;

AltForm Wedge(const AltForm &a, const AltForm &b)
{
  AltForm out{};
  for (unsigned i = 0; i < 8; i++)
  {
    if (a[i] == 0.0)
    {
      continue;
    }
    for (unsigned j = 0; j < 8; j++)
    {
      if (b[j] != 0.0 && !(i & j))
      {
        out[i | j] += wedge_sign(i, j) * a[i] * b[j];
      }
    }
  }
  return out;
}

}  // namespace

int trimmed_dimension(int dim, int k, int r)
{
  return binomial(r + k - 1, k) * binomial(dim + r, dim - k);
}

Eigen::MatrixXd reference_gradients(int dim)
{
  Eigen::MatrixXd grads = Eigen::MatrixXd::Zero(dim + 1, dim);
  grads.row(0).setConstant(-1.0);
  grads.bottomRows(dim).setIdentity();
  return grads;
}

double LocalBasis::apply_dof(int i, const BaryForm &form) const
{
  const auto &dof = dofs_.at(i);
  const auto &face = local_subsimplices(dim_ + 1, dof.sub_dim + 1)[dof.sub_local];
  const BaryForm weight = dof.weight.embed(dim_ + 1, face);
  return form.wedge(weight).integrate(face);
}

Vec LocalBasis::eval(int i, std::span<const double> bary) const
{
  return eval(i, bary, reference_gradients(dim_));
}

Vec LocalBasis::eval(int i, std::span<const double> bary, const Eigen::MatrixXd &grads) const
{
  MAXFEEC_VERIFY(i >= 0 && i < size(), "basis function index out of range");
  return evaluate(functions_[i], bary, grads, dim_);
}

const LocalBasis &reference_basis(int dim, int k, int r)
{
  MAXFEEC_VERIFY(dim == 2 || dim == 3, "unsupported dimension for Whitney basis");
  MAXFEEC_VERIFY(k >= 0 && k <= dim, "form degree out of range");
  MAXFEEC_VERIFY(r == 1 || r == 2, "unsupported polynomial order (r must be 1 or 2)");

  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, LocalBasis> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({dim, k, r}); it != cache.end())
  {
    return it->second;
  }

  LocalBasis basis;
  basis.dim_ = dim;
  basis.k_ = k;
  basis.r_ = r;
  const int nb = dim + 1;

  // Spanning set lambda^alpha phi_sigma, |alpha| = r - 1, alpha vanishing below min sigma.
  for (const auto &sigma : local_subsimplices(nb, k + 1))
  {
    BaryForm whitney(nb, k);
    const unsigned mask = subset_mask(sigma);
    for (int i = 0; i <= k; i++)
    {
      std::array<int, 4> power{};
      power[sigma[i]] = 1;
      whitney.add((i % 2 == 0) ? 1.0 : -1.0, power, mask & ~(1u << sigma[i]));
    }
    for (const auto &alpha : MultiIndices(nb, r - 1))
    {
      bool admissible = true;
      for (int j = 0; j < sigma[0]; j++)
      {
        admissible = admissible && alpha[j] == 0;
      }
      if (!admissible)
      {
        continue;
      }
      BaryForm g(nb, k);
      for (const auto &t : whitney.terms())
      {
        std::array<int, 4> power = t.power;
        for (int j = 0; j < nb; j++)
        {
          power[j] += alpha[j];
        }
        g.add(t.coef, power, t.wedge);
      }
      basis.generators_.push_back(g);
    }
  }

  // Trace moments, grouped by sub-simplex dimension, then sub-simplex, then weight.
  basis.per_sub_.assign(dim + 1, 0);
  for (int m = k; m <= dim; m++)
  {
    const int q = r + k - m - 1;
    if (q < 0)
    {
      continue;
    }
    const auto weights = MomentWeights(m, m - k, q);
    basis.per_sub_[m] = static_cast<int>(weights.size());
    const int nsub = static_cast<int>(local_subsimplices(nb, m + 1).size());
    for (int s = 0; s < nsub; s++)
    {
      for (std::size_t w = 0; w < weights.size(); w++)
      {
        basis.dofs_.push_back({m, s, static_cast<int>(w), weights[w]});
      }
    }
  }

  const int n = static_cast<int>(basis.dofs_.size());
  if (n != static_cast<int>(basis.generators_.size()) || n != trimmed_dimension(dim, k, r))
  {
    throw std::logic_error("Whitney basis construction: dimension count mismatch");
  }
  Eigen::MatrixXd moments(n, n);
  for (int j = 0; j < n; j++)
  {
    for (int g = 0; g < n; g++)
    {
      moments(j, g) = basis.apply_dof(j, basis.generators_[g]);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(moments);
  if (!lu.isInvertible())
  {
    throw std::logic_error("Whitney basis construction: moment matrix is singular");
  }
  const Eigen::MatrixXd dual = lu.inverse();
  for (int i = 0; i < n; i++)
  {
    BaryForm f(nb, k);
    for (int g = 0; g < n; g++)
    {
      f.add(basis.generators_[g], dual(g, i));
    }
    f.compress(1e-13);
    basis.derivatives_.push_back(k < dim ? f.d() : BaryForm(nb, k + 1));
    basis.functions_.push_back(std::move(f));
  }
  return cache.emplace(std::tuple{dim, k, r}, std::move(basis)).first->second;
}

Eigen::MatrixXd local_exterior_derivative(int dim, int k, int r)
{
  MAXFEEC_VERIFY(k >= 0 && k < dim, "exterior derivative needs k < dim");
  const LocalBasis &from = reference_basis(dim, k, r);
  const LocalBasis &to = reference_basis(dim, k + 1, r);
  Eigen::MatrixXd d(to.size(), from.size());
  for (int i = 0; i < from.size(); i++)
  {
    for (int j = 0; j < to.size(); j++)
    {
      d(j, i) = to.apply_dof(j, from.derivative(i));
    }
  }
  return d;
}

Tabulation::Tabulation(const LocalBasis &basis, const QuadratureRule &rule, bool derivative)
    : degree_(basis.k() + (derivative ? 1 : 0)), npoints_(rule.size()), nfunc_(basis.size())
{
  MAXFEEC_VERIFY(rule.dim == basis.dim(), "quadrature dimension does not match basis");
  MAXFEEC_VERIFY(degree_ <= basis.dim(), "no derivative of a top-degree form");
  for (const auto &s : local_subsimplices(basis.dim() + 1, degree_))
  {
    masks_.push_back(subset_mask(s));
  }
  std::array<int, 16> slot{};
  for (std::size_t m = 0; m < masks_.size(); m++)
  {
    slot[masks_[m]] = static_cast<int>(m);
  }
  values_.assign(std::size_t(npoints_) * nfunc_ * masks_.size(), 0.0);
  for (int q = 0; q < npoints_; q++)
  {
    for (int i = 0; i < nfunc_; i++)
    {
      const BaryForm &f = derivative ? basis.derivative(i) : basis.function(i);
      for (const auto &t : f.terms())
      {
        values_[(q * nfunc_ + i) * masks_.size() + slot[t.wedge]] +=
            t.coef * BaryForm::monomial(t.power, rule.point(q));
      }
    }
  }
}

double apply_dof_to_field(const DofDescriptor &dof, int dim, int k,
                          std::span<const Vec> sub_vertices, const ProxyFunction &field,
                          int quadrature_degree)
{
  const int m = dof.sub_dim;
  MAXFEEC_VERIFY(static_cast<int>(sub_vertices.size()) == m + 1,
                 "sub-simplex vertex count does not match moment");
  std::vector<Vec> edges;
  for (int j = 1; j <= m; j++)
  {
    edges.push_back(sub_vertices[j] - sub_vertices[0]);
  }
  // Parameter coordinates u_j = lambda_j (j = 1..m) map to bits j-1.
  auto dlambda = [m](int j)
  {
    AltForm a{};
    if (j == 0)
    {
      for (int i = 0; i < m; i++)
      {
        a[1u << i] = -1.0;
      }
    }
    else
    {
      a[1u << (j - 1)] = 1.0;
    }
    return a;
  };
  const unsigned top = (1u << m) - 1u;
  const auto &k_subsets = local_subsimplices(m, k);
  const QuadratureRule &rule = quadrature_rule(m, quadrature_degree);
  double sum = 0.0;
  for (int q = 0; q < rule.size(); q++)
  {
    const auto bary = rule.point(q);
    Vec x = Vec::Zero(dim);
    for (int j = 0; j <= m; j++)
    {
      x += bary[j] * sub_vertices[j];
    }
    const Vec value = field(x);
    AltForm pulled{};
    for (const auto &subset : k_subsets)
    {
      std::vector<Vec> vectors;
      for (int j : subset)
      {
        vectors.push_back(edges[j]);
      }
      pulled[subset_mask(subset)] = evaluate_on_vectors(value, dim, k, vectors);
    }
    AltForm weight{};
    for (const auto &t : dof.weight.terms())
    {
      AltForm term{};
      term[0] = t.coef * BaryForm::monomial(t.power, bary);
      for (unsigned rest = t.wedge; rest; rest &= rest - 1)
      {
        term = Wedge(term, dlambda(std::countr_zero(rest)));
      }
      for (int i = 0; i < 8; i++)
      {
        weight[i] += term[i];
      }
    }
    sum += rule.weights[q] * Wedge(pulled, weight)[top];
  }
  return sum;
}

}  // namespace maxfeec
