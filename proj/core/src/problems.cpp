// SPDX-License-Identifier: Apache-2.0

#include "maxfeec/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace maxfeec
{

namespace
{

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

Vec scalar(double v)
{
  return Vec::Constant(1, v);
}

Vec vec2(double a, double b)
{
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec3(double a, double b, double c)
{
  Vec v(3);
  v << a, b, c;
  return v;
}

SpaceTimeField zero(int size)
{
  return [size](const Vec &, double) -> Vec { return Vec::Zero(size); };
}

// Examples 1 (a = pi).
// E = (sin ay, sin ax) cos at, H = (cos ay - cos ax) sin at, p = 0.
ProblemSpec square_standing_wave(double a)
{
  ProblemSpec s;
  s.dim = 2;
  s.p = zero(1);
  s.grad_p = zero(2);
  s.p_t = zero(1);
  s.E = [a](const Vec &x, double t) -> Vec
  { return vec2(std::sin(a * x[1]), std::sin(a * x[0])) * std::cos(a * t); };
  s.E_t = [a](const Vec &x, double t) -> Vec
  { return vec2(std::sin(a * x[1]), std::sin(a * x[0])) * (-a * std::sin(a * t)); };
  s.div_E = zero(1);
  s.curl_E = [a](const Vec &x, double t) -> Vec
  { return scalar(a * (std::cos(a * x[0]) - std::cos(a * x[1])) * std::cos(a * t)); };
  s.H = [a](const Vec &x, double t) -> Vec
  { return scalar((std::cos(a * x[1]) - std::cos(a * x[0])) * std::sin(a * t)); };
  s.H_t = [a](const Vec &x, double t) -> Vec
  { return scalar(a * (std::cos(a * x[1]) - std::cos(a * x[0])) * std::cos(a * t)); };
  s.curl_H = [a](const Vec &x, double t) -> Vec
  { return vec2(-std::sin(a * x[1]), -std::sin(a * x[0])) * (a * std::sin(a * t)); };
  return s;
}

// Examples 2 (a = pi) and 6 (a = 1), both with eps = 2.
// E_i = sin(a x_j) sin(a x_k) cos at, H_i = sin(a x_i) (cos(a x_k) - cos(a x_j)) sin at
// for cyclic (i, j, k).
ProblemSpec cube_standing_wave(double a)
{
  ProblemSpec s;
  s.dim = 3;
  s.p = zero(1);
  s.grad_p = zero(3);
  s.p_t = zero(1);
  auto products = [a](const Vec &x) -> Vec
  {
    return vec3(std::sin(a * x[1]) * std::sin(a * x[2]), std::sin(a * x[0]) * std::sin(a * x[2]),
                std::sin(a * x[0]) * std::sin(a * x[1]));
  };
  auto circulation = [a](const Vec &x) -> Vec
  {
    const double sx = std::sin(a * x[0]), sy = std::sin(a * x[1]), sz = std::sin(a * x[2]);
    const double cx = std::cos(a * x[0]), cy = std::cos(a * x[1]), cz = std::cos(a * x[2]);
    return vec3(sx * (cz - cy), sy * (cx - cz), sz * (cy - cx));
  };
  s.E = [=](const Vec &x, double t) -> Vec { return products(x) * std::cos(a * t); };
  s.E_t = [=](const Vec &x, double t) -> Vec { return products(x) * (-a * std::sin(a * t)); };
  s.div_E = zero(1);
  // curl E = -a * circulation * cos at.
  s.curl_E = [=](const Vec &x, double t) -> Vec { return circulation(x) * (-a * std::cos(a * t)); };
  s.H = [=](const Vec &x, double t) -> Vec { return circulation(x) * std::sin(a * t); };
  s.H_t = [=](const Vec &x, double t) -> Vec { return circulation(x) * (a * std::cos(a * t)); };
  s.curl_H = [=](const Vec &x, double t) -> Vec { return products(x) * (-2.0 * a * std::sin(a * t)); };
  s.div_H = zero(1);
  return s;
}

// Examples 3, 4 (b = pi) and 5 (b = 1): a travelling wave in theta = pi (sqrt2 t - x - y)
// plus a standing part of frequency b.
ProblemSpec travelling_wave(double b, int dim)
{
  ProblemSpec s;
  s.dim = dim;
  auto theta = [](const Vec &x, double t) { return kPi * (kSqrt2 * t - x[0] - x[1]); };
  auto pad = [dim](double u, double v, double w = 0.0) { return dim == 2 ? vec2(u, v) : vec3(u, v, w); };
  s.p = [b](const Vec &x, double t) -> Vec
  { return scalar((std::cos(b * x[0]) + std::cos(b * x[1])) * std::sin(b * t)); };
  s.p_t = [b](const Vec &x, double t) -> Vec
  { return scalar(b * (std::cos(b * x[0]) + std::cos(b * x[1])) * std::cos(b * t)); };
  s.grad_p = [=](const Vec &x, double t) -> Vec
  {
    const double st = std::sin(b * t);
    return pad(-b * std::sin(b * x[0]) * st, -b * std::sin(b * x[1]) * st);
  };
  s.E = [=](const Vec &x, double t) -> Vec
  {
    const double w = std::sin(theta(x, t)), ct = std::cos(b * t);
    return pad(w - std::sin(b * x[0]) * ct, -w - std::sin(b * x[1]) * ct);
  };
  s.E_t = [=](const Vec &x, double t) -> Vec
  {
    const double w = kSqrt2 * kPi * std::cos(theta(x, t)), st = b * std::sin(b * t);
    return pad(w + std::sin(b * x[0]) * st, -w + std::sin(b * x[1]) * st);
  };
  s.div_E = [b](const Vec &x, double t) -> Vec
  { return scalar(-b * (std::cos(b * x[0]) + std::cos(b * x[1])) * std::cos(b * t)); };
  // H = -sqrt2 sin(theta); in 3D only the z flux component is nonzero.
  s.H = [=](const Vec &x, double t) -> Vec
  {
    const double h = -kSqrt2 * std::sin(theta(x, t));
    return dim == 2 ? scalar(h) : vec3(0.0, 0.0, h);
  };
  s.H_t = [=](const Vec &x, double t) -> Vec
  {
    const double h = -2.0 * kPi * std::cos(theta(x, t));
    return dim == 2 ? scalar(h) : vec3(0.0, 0.0, h);
  };
  s.curl_E = [=](const Vec &x, double t) -> Vec
  {
    const double c = 2.0 * kPi * std::cos(theta(x, t));
    return dim == 2 ? scalar(c) : vec3(0.0, 0.0, c);
  };
  s.curl_H = [=](const Vec &x, double t) -> Vec
  {
    const double c = kSqrt2 * kPi * std::cos(theta(x, t));
    return pad(c, -c);
  };
  if (dim == 3)
  {
    s.div_H = zero(1);
  }
  return s;
}

void set_zero_forcing(ProblemSpec &s)
{
  s.f_p = zero(1);
  s.f_E = zero(s.dim);
  s.f_H = zero(s.dim == 2 ? 1 : 3);
}

std::array<ProblemSpec, 6> build_catalog()
{
  const double sin1 = std::sin(1.0), sin2 = std::sin(2.0), cos2 = std::cos(2.0);
  std::array<ProblemSpec, 6> c;

  c[0] = square_standing_wave(kPi);
  c[0].eps = 1.0;
  c[0].t_max = 2.0;
  c[0].energy_parts = [](double t)
  {
    const double ct = std::cos(kPi * t), st = std::sin(kPi * t);
    return EnergyParts{0.0, ct * ct, st * st};
  };
  c[0].tabulated_energy = [](double) { return 1.0; };

  c[1] = cube_standing_wave(kPi);
  c[1].eps = 2.0;
  c[1].t_max = 2.0;
  c[1].energy_parts = [](double t)
  {
    const double ct = std::cos(kPi * t), st = std::sin(kPi * t);
    return EnergyParts{0.0, 1.5 * ct * ct, 1.5 * st * st};
  };
  c[1].tabulated_energy = [](double) { return 1.5; };

  for (int i : {2, 3})
  {
    c[i] = travelling_wave(kPi, i == 2 ? 2 : 3);
    c[i].eps = 1.0;
    c[i].t_max = 2.0;
    c[i].homogeneous = false;
    c[i].energy_parts = [](double t)
    {
      const double ct = std::cos(kPi * t), st = std::sin(kPi * t);
      return EnergyParts{st * st, 1.0 + ct * ct, 1.0};
    };
    c[i].tabulated_energy = [](double) { return 3.0; };
  }

  c[4] = travelling_wave(1.0, 2);
  c[4].eps = 1.0;
  c[4].t_max = 3.14;
  c[4].homogeneous = false;
  c[4].energy_parts = [=](double t)
  {
    const double ct = std::cos(t), st = std::sin(t);
    return EnergyParts{st * st * (1.0 + 0.5 * sin2 + 2.0 * sin1 * sin1),
                       1.0 + ct * ct * (1.0 - 0.5 * sin2), 1.0};
  };
  c[4].tabulated_energy = [=](double t)
  {
    const double st = std::sin(t);
    return 3.0 - 0.5 * sin2 + (2.0 * sin1 + sin2) * st * st;
  };

  c[5] = cube_standing_wave(1.0);
  c[5].eps = 2.0;
  c[5].t_max = 3.0;
  c[5].homogeneous = false;
  c[5].energy_parts = [=](double t)
  {
    // a = int_0^1 sin^2 = 1/2 - sin2/4.
    const double a = 0.5 - 0.25 * sin2;
    const double ct = std::cos(t), st = std::sin(t);
    return EnergyParts{0.0, 6.0 * a * a * ct * ct, 3.0 * a * (cos2 + 0.5 * sin2) * st * st};
  };
  c[5].tabulated_energy = [=](double t)
  {
    const double st = std::sin(t), ct = std::cos(t);
    return 1.5 + 0.375 * sin2 * sin2 * std::cos(2.0 * t) +
           1.5 * sin2 * (sin1 * sin1 * st * st - ct * ct);
  };

  for (int i = 0; i < 6; i++)
  {
    c[i].id = i + 1;
    c[i].name = "example" + std::to_string(i + 1);
    c[i].mu = 1.0;
    c[i].t_min = 0.0;
    set_zero_forcing(c[i]);
  }
  return c;
}

}  // namespace

const ProblemSpec &get_problem(int id)
{
  static const std::array<ProblemSpec, 6> catalog = build_catalog();
  MAXFEEC_VERIFY(id >= 1 && id <= 6, "unknown problem id " + std::to_string(id));
  return catalog[id - 1];
}

const ProblemSpec &get_problem(const std::string &name)
{
  for (int id = 1; id <= 6; id++)
  {
    if (name == "example" + std::to_string(id))
    {
      return get_problem(id);
    }
  }
  throw InvalidArgument("unknown problem '" + name + "' (expected example1..example6)");
}

ProblemSpec zero_problem(int dim)
{
  MAXFEEC_VERIFY(dim == 2 || dim == 3, "problem dimension must be 2 or 3");
  ProblemSpec s;
  s.name = "zero";
  s.dim = dim;
  const int h = dim == 2 ? 1 : 3;
  s.p = s.p_t = s.div_E = zero(1);
  s.grad_p = s.E = s.E_t = s.curl_H = zero(dim);
  s.H = s.H_t = s.curl_E = zero(h);
  if (dim == 3)
  {
    s.div_H = zero(1);
  }
  set_zero_forcing(s);
  s.energy_parts = [](double) { return EnergyParts{}; };
  s.tabulated_energy = [](double) { return 0.0; };
  return s;
}

Residuals equation_residuals(const ProblemSpec &s, const Vec &x, double t)
{
  Residuals r;
  r.p = (s.p_t(x, t) + s.eps * s.div_E(x, t) - s.f_p(x, t)).cwiseAbs().maxCoeff();
  r.E = (s.grad_p(x, t) + s.eps * s.E_t(x, t) - s.curl_H(x, t) - s.f_E(x, t)).cwiseAbs().maxCoeff();
  r.H = (s.mu * s.H_t(x, t) + s.curl_E(x, t) - s.f_H(x, t)).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace maxfeec
