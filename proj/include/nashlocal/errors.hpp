/*
 Copyright 2026 The nashlocal Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nashlocal {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, bad index, unknown builtin name.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A derivative method was requested that the cost representation lacks.
class MethodUnavailable : public Error {
 public:
  using Error::Error;
};

/// Non-finite values, eigensolver failure and similar numerical breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An operation's hypothesis does not hold at the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for a brute-force or dense routine.
class DimensionError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string format_vector(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) os << ", ";
    os << v[k];
  }
  os << ')';
  return os.str();
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace detail
}  // namespace nashlocal
