// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_SELFTEST_HPP
#define MAXFEEC_SELFTEST_HPP

#include <optional>
#include <string>
#include <vector>

#include "maxfeec/quadrature.hpp"

namespace maxfeec
{

struct CheckResult
{
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fast structural checks of the discretization. Each returns one named result and never
// throws; exceptions are reported as failures.
CheckResult check_quadrature_exactness(const QuadratureRule &rule);
CheckResult check_builtin_quadrature();
CheckResult check_dimension_counts();
CheckResult check_unisolvence();
CheckResult check_partition_of_unity();
CheckResult check_exterior_derivative_nilpotent();
CheckResult check_mass_spd();
CheckResult check_grad_coupling_transpose();
CheckResult check_curl_of_gradient();
CheckResult check_zero_state_invariance();
CheckResult check_euler_characteristic();
// Parse a mesh in the text format and check its Euler characteristic is 1 (a ball).
CheckResult check_mesh_text(const std::string &text);

struct SelftestOptions
{
  // Checked for exactness in addition to the built-in rules.
  std::optional<QuadratureRule> quadrature;
  std::optional<std::string> mesh_text;
};

std::vector<CheckResult> run_selftest(const SelftestOptions &options = {});

}  // namespace maxfeec

#endif  // MAXFEEC_SELFTEST_HPP
