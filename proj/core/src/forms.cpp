// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <Eigen/Dense>

namespace maxfeec
{

namespace
{

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

int wedge_sign(unsigned a, unsigned b)
{
  // Count pairs (i in a, j in b) with i > j.
  int inversions = 0;
  for (unsigned rest = a; rest; rest &= rest - 1)
  {
    const int i = std::countr_zero(rest);
    inversions += std::popcount(b & ((1u << i) - 1u));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

void BaryForm::add(double coef, const std::array<int, 4> &power, unsigned wedge)
{
  terms_.push_back({coef, power, wedge});
}

void BaryForm::add(const BaryForm &other, double scale)
{
  for (const auto &t : other.terms_)
  {
    terms_.push_back({t.coef * scale, t.power, t.wedge});
  }
}

BaryForm BaryForm::d() const
{
  BaryForm out(n_bary_, degree_ + 1);
  for (const auto &t : terms_)
  {
    for (int j = 0; j < n_bary_; j++)
    {
      if (t.power[j] == 0 || (t.wedge & (1u << j)))
      {
        continue;
      }
      auto power = t.power;
      power[j]--;
      out.add(t.coef * t.power[j] * wedge_sign(1u << j, t.wedge), power, t.wedge | (1u << j));
    }
  }
  out.compress();
  return out;
}

BaryForm BaryForm::wedge(const BaryForm &other) const
{
  BaryForm out(n_bary_, degree_ + other.degree_);
  for (const auto &a : terms_)
  {
    for (const auto &b : other.terms_)
    {
      if (a.wedge & b.wedge)
      {
        continue;
      }
      std::array<int, 4> power{};
      for (int j = 0; j < 4; j++)
      {
        power[j] = a.power[j] + b.power[j];
      }
      out.add(a.coef * b.coef * wedge_sign(a.wedge, b.wedge), power, a.wedge | b.wedge);
    }
  }
  out.compress();
  return out;
}

BaryForm BaryForm::embed(int n_bary, std::span<const int> vertices) const
{
  BaryForm out(n_bary, degree_);
  for (const auto &t : terms_)
  {
    std::array<int, 4> power{};
    unsigned wedge = 0;
    for (int j = 0; j < n_bary_; j++)
    {
      power[vertices[j]] = t.power[j];
      if (t.wedge & (1u << j))
      {
        wedge |= 1u << vertices[j];
      }
    }
    // Ascending vertex lists keep the wedge order, so no sign change.
    out.add(t.coef, power, wedge);
  }
  return out;
}

double BaryForm::integrate(std::span<const int> face) const
{
  const int m = static_cast<int>(face.size()) - 1;
  MAXFEEC_VERIFY(m == degree_, "form degree does not match integration domain");
  unsigned face_mask = 0;
  for (int v : face)
  {
    face_mask |= 1u << v;
  }
  double sum = 0.0;
  for (const auto &t : terms_)
  {
    if (t.wedge & ~face_mask)
    {
      continue;
    }
    bool supported = true;
    int total = 0;
    double beta_factorial = 1.0;
    for (int j = 0; j < n_bary_; j++)
    {
      if (t.power[j] > 0 && !(face_mask & (1u << j)))
      {
        supported = false;
        break;
      }
      total += t.power[j];
      beta_factorial *= Factorial(t.power[j]);
    }
    if (!supported)
    {
      continue;
    }
    // On the face, d lambda_{face minus face[q]} = (-1)^q d lambda_{face[1]} ^ ... ^
    // d lambda_{face[m]}, and the latter integrates like Lebesgue measure in the
    // coordinates (lambda_{face[1]}, ..., lambda_{face[m]}).
    int sign = 1;
    if (m > 0)
    {
      const unsigned missing = face_mask & ~t.wedge;
      const int q = static_cast<int>(std::find(face.begin(), face.end(),
                                               std::countr_zero(missing)) -
                                     face.begin());
      sign = (q % 2 == 0) ? 1 : -1;
    }
    sum += sign * t.coef * beta_factorial / Factorial(total + m);
  }
  return sum;
}

void BaryForm::compress(double tol)
{
  std::map<std::pair<std::array<int, 4>, unsigned>, double> merged;
  for (const auto &t : terms_)
  {
    merged[{t.power, t.wedge}] += t.coef;
  }
  terms_.clear();
  for (const auto &[key, coef] : merged)
  {
    if (std::abs(coef) > tol)
    {
      terms_.push_back({coef, key.first, key.second});
    }
  }
}

double BaryForm::monomial(const std::array<int, 4> &power, std::span<const double> bary)
{
  double v = 1.0;
  for (std::size_t j = 0; j < bary.size(); j++)
  {
    for (int p = 0; p < power[j]; p++)
    {
      v *= bary[j];
    }
  }
  return v;
}

int proxy_size(int dim, int k)
{
  return (k == 0 || k == dim) ? 1 : dim;
}

Vec wedge_proxy(unsigned wedge, const Eigen::MatrixXd &grads)
{
  const int dim = static_cast<int>(grads.cols());
  std::array<int, 4> idx{};
  int k = 0;
  for (unsigned rest = wedge; rest; rest &= rest - 1)
  {
    idx[k++] = std::countr_zero(rest);
  }
  if (k == 0)
  {
    return Vec::Constant(1, 1.0);
  }
  if (k == 1)
  {
    return grads.row(idx[0]).transpose();
  }
  if (k == 2 && dim == 2)
  {
    const double v = grads(idx[0], 0) * grads(idx[1], 1) - grads(idx[0], 1) * grads(idx[1], 0);
    return Vec::Constant(1, v);
  }
  if (k == 2 && dim == 3)
  {
    const Eigen::Vector3d a = grads.row(idx[0]).transpose();
    const Eigen::Vector3d b = grads.row(idx[1]).transpose();
    return a.cross(b);
  }
  MAXFEEC_VERIFY(k == 3 && dim == 3, "wedge degree exceeds dimension");
  const Eigen::Vector3d a = grads.row(idx[0]).transpose();
  const Eigen::Vector3d b = grads.row(idx[1]).transpose();
  const Eigen::Vector3d c = grads.row(idx[2]).transpose();
  return Vec::Constant(1, a.dot(b.cross(c)));
}

Vec evaluate(const BaryForm &form, std::span<const double> bary, const Eigen::MatrixXd &grads,
             int dim)
{
  Vec out = Vec::Zero(proxy_size(dim, form.degree()));
  for (const auto &t : form.terms())
  {
    out += t.coef * BaryForm::monomial(t.power, bary) * wedge_proxy(t.wedge, grads);
  }
  return out;
}

double evaluate_on_vectors(const Vec &proxy, int dim, int k, std::span<const Vec> vectors)
{
  switch (k)
  {
    case 0:
      return proxy[0];
    case 1:
      return proxy.dot(vectors[0]);
    case 2:
      if (dim == 2)
      {
        return proxy[0] * (vectors[0][0] * vectors[1][1] - vectors[0][1] * vectors[1][0]);
      }
      return proxy.dot(Eigen::Vector3d(vectors[0]).cross(Eigen::Vector3d(vectors[1])));
    case 3:
    {
      Eigen::Matrix3d m;
      m << vectors[0], vectors[1], vectors[2];
      return proxy[0] * m.determinant();
    }
    default:
      throw InvalidArgument("form degree out of range");
  }
}

Eigen::MatrixXd barycentric_gradients(std::span<const Vec> vertices)
{
  const int dim = static_cast<int>(vertices.size()) - 1;
  Eigen::MatrixXd jac(dim, dim);
  for (int i = 0; i < dim; i++)
  {
    jac.col(i) = vertices[i + 1] - vertices[0];
  }
  // Rows 1..dim of the gradient matrix are the rows of J^{-1}.
  const Eigen::MatrixXd inv = jac.inverse();
  Eigen::MatrixXd grads(dim + 1, dim);
  grads.bottomRows(dim) = inv;
  grads.row(0) = -inv.colwise().sum();
  return grads;
}

}  // namespace maxfeec
