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

#include "nashlocal/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <complex>
#include <vector>

namespace nashlocal::spectral {

/// Ascending eigenvalues of a symmetric matrix.
inline std::vector<double> symmetric_eigenvalues(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver did not converge");
  const Vector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Non-increasing singular values.
inline std::vector<double> singular_values(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  const Vector& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

/// Eigenvalues of a general real matrix, sorted by real part then imaginary.
inline std::vector<std::complex<double>> eigenvalues(const Matrix& A) {
  Eigen::EigenSolver<Matrix> solver(A, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

/// sigma_min / sigma_max, or 0 for a zero matrix.
inline double relative_sigma_min(const std::vector<double>& sv) {
  if (sv.empty() || sv.front() == 0.0) return 0.0;
  return sv.back() / sv.front();
}

}  // namespace nashlocal::spectral
