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

#include "nashlocal/dual.hpp"
#include "nashlocal/errors.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nashlocal {

struct Monomial {
  double coeff = 0.0;
  std::vector<unsigned> exponents;
};

/// Sparse multivariate polynomial in a fixed number of variables. Evaluates
/// over any scalar type (double, Dual1, Dual2) and differentiates exactly.
class Polynomial {
 public:
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  Polynomial(std::size_t num_vars, std::vector<Monomial> terms)
      : num_vars_(num_vars), terms_(std::move(terms)) {
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      if (terms_[t].exponents.size() != num_vars_)
        throw InputError("monomial " + std::to_string(t) + " has " +
                         std::to_string(terms_[t].exponents.size()) +
                         " exponents, expected " + std::to_string(num_vars_));
      if (!std::isfinite(terms_[t].coeff))
        throw InputError("monomial " + std::to_string(t) +
                         " has a non-finite coefficient");
    }
  }

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  Polynomial& add_term(double coeff, std::vector<unsigned> exponents) {
    if (exponents.size() != num_vars_)
      throw InputError("monomial exponent tuple has wrong length");
    terms_.push_back({coeff, std::move(exponents)});
    return *this;
  }

  template <class T>
  T evaluate(std::span<const T> x) const {
    T sum(0.0);
    for (const auto& term : terms_) {
      T prod(term.coeff);
      for (std::size_t v = 0; v < num_vars_; ++v)
        if (term.exponents[v]) prod = prod * ipow(x[v], term.exponents[v]);
      sum = sum + prod;
    }
    return sum;
  }

  double operator()(const Vector& x) const {
    return evaluate<double>(std::span<const double>(x.data(), x.size()));
  }

  /// Symbolic partial derivative with respect to variable `var`.
  Polynomial derivative(std::size_t var) const {
    Polynomial d(num_vars_);
    for (const auto& term : terms_) {
      const unsigned e = term.exponents[var];
      if (e == 0 || term.coeff == 0.0) continue;
      auto exps = term.exponents;
      exps[var] = e - 1;
      d.terms_.push_back({term.coeff * e, std::move(exps)});
    }
    return d;
  }

  Polynomial operator+(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw InputError("polynomial arity mismatch");
    Polynomial r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    return r;
  }

  Polynomial scaled(double s) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
  }

 private:
  std::size_t num_vars_;
  std::vector<Monomial> terms_;
};

/// Precomputed first and second symbolic derivatives of a polynomial.
class PolynomialDerivatives {
 public:
  explicit PolynomialDerivatives(const Polynomial& p) {
    const std::size_t m = p.num_vars();
    first_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) first_.push_back(p.derivative(k));
    second_.reserve(m * m);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l)
        second_.push_back(first_[k].derivative(l));
  }

  Vector gradient(const Vector& x) const {
    Vector g(first_.size());
    for (std::size_t k = 0; k < first_.size(); ++k) g[k] = first_[k](x);
    return g;
  }

  Matrix hessian(const Vector& x) const {
    const auto m = static_cast<Eigen::Index>(first_.size());
    Matrix h(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index l = 0; l < m; ++l) h(k, l) = second_[k * m + l](x);
    return h;
  }

 private:
  std::vector<Polynomial> first_;
  std::vector<Polynomial> second_;
};

/// f(u) = 1/2 u^T A u + b^T u + c with A symmetric.
class QuadraticForm {
 public:
  QuadraticForm(Matrix A, Vector b, double c) : A_(std::move(A)), b_(std::move(b)), c_(c) {
    if (A_.rows() != A_.cols() || A_.rows() != b_.size())
      throw InputError("quadratic form: A must be square and match b");
    for (Eigen::Index r = 0; r < A_.rows(); ++r)
      for (Eigen::Index s = r + 1; s < A_.cols(); ++s)
        if (A_(r, s) != A_(s, r))
          throw InputError("quadratic form: A is not symmetric at entry [" +
                           std::to_string(r) + "][" + std::to_string(s) + "]");
    if (!A_.allFinite() || !b_.allFinite() || !std::isfinite(c_))
      throw InputError("quadratic form: non-finite coefficient");
  }

  std::size_t num_vars() const { return static_cast<std::size_t>(b_.size()); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  double c() const { return c_; }

  template <class T>
  T evaluate(std::span<const T> x) const {
    const auto m = A_.rows();
    T sum(c_);
    for (Eigen::Index r = 0; r < m; ++r) {
      T row(b_[r]);
      for (Eigen::Index s = 0; s < m; ++s)
        if (A_(r, s) != 0.0) row = row + 0.5 * A_(r, s) * x[s];
      sum = sum + row * x[r];
    }
    return sum;
  }

  double operator()(const Vector& x) const { return 0.5 * x.dot(A_ * x) + b_.dot(x) + c_; }
  Vector gradient(const Vector& x) const { return A_ * x + b_; }
  const Matrix& hessian() const { return A_; }

  Polynomial to_polynomial() const {
    const std::size_t m = num_vars();
    Polynomial p(m);
    if (c_ != 0.0) p.add_term(c_, std::vector<unsigned>(m, 0));
    for (std::size_t r = 0; r < m; ++r) {
      if (b_[r] != 0.0) {
        std::vector<unsigned> e(m, 0);
        e[r] = 1;
        p.add_term(b_[r], e);
      }
      for (std::size_t s = r; s < m; ++s) {
        const double a = A_(r, s);
        if (a == 0.0) continue;
        std::vector<unsigned> e(m, 0);
        ++e[r];
        ++e[s];
        p.add_term(r == s ? 0.5 * a : a, e);
      }
    }
    return p;
  }

 private:
  Matrix A_;
  Vector b_;
  double c_;
};

}  // namespace nashlocal
