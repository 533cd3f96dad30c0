// SPDX-License-Identifier: Apache-2.0

#ifndef MAXFEEC_COMMON_HPP
#define MAXFEEC_COMMON_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace maxfeec
{

// Small fixed-capacity vector used for points and field proxies. Holds 1 to 3
// components: a scalar proxy has size 1, vector proxies have the spatial dimension.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;

using Vector = Eigen::VectorXd;

// Invalid input: bad mesh resolution, malformed files, unsupported spaces, dimension
// mismatches. The CLI maps these to exit code 2.
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure inside a solve (singular system, failed factorization). The CLI
// maps these to exit code 3.
class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define MAXFEEC_VERIFY(cond, msg)                                                        \
  do                                                                                     \
  {                                                                                      \
    if (!(cond))                                                                         \
    {                                                                                    \
      throw ::maxfeec::InvalidArgument(msg);                                             \
    }                                                                                    \
  } while (false)

}  // namespace maxfeec

#endif  // MAXFEEC_COMMON_HPP
