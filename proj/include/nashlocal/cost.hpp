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
#include "nashlocal/polynomial.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>

namespace nashlocal {

/// A scalar cost over the joint strategy vector.
///
/// Costs carry up to three derivative routes: exact analytic gradient and
/// Hessian (polynomial, quadratic, or user-registered), dual-number
/// evaluation (polynomial, quadratic, or generic templated callables), and
/// plain values, from which finite differences can always be formed.
/// Instances are immutable and cheap to copy.
class Cost {
 public:
  enum class Kind { polynomial, quadratic, generic };

  using ValueFn = std::function<double(std::span<const double>)>;
  using Dual1Fn = std::function<Dual1(std::span<const Dual1>)>;
  using Dual2Fn = std::function<Dual2(std::span<const Dual2>)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;

  static Cost polynomial(Polynomial p) {
    Cost c(Kind::polynomial, p.num_vars());
    auto poly = std::make_shared<const Polynomial>(std::move(p));
    auto derivs = std::make_shared<const PolynomialDerivatives>(*poly);
    c.value_ = [poly](std::span<const double> x) { return poly->evaluate<double>(x); };
    c.dual1_ = [poly](std::span<const Dual1> x) { return poly->evaluate<Dual1>(x); };
    c.dual2_ = [poly](std::span<const Dual2> x) { return poly->evaluate<Dual2>(x); };
    c.gradient_ = [derivs](const Vector& x) { return derivs->gradient(x); };
    c.hessian_ = [derivs](const Vector& x) { return derivs->hessian(x); };
    c.polynomial_ = poly;
    return c;
  }

  static Cost quadratic(QuadraticForm q) {
    Cost c(Kind::quadratic, q.num_vars());
    auto quad = std::make_shared<const QuadraticForm>(std::move(q));
    c.value_ = [quad](std::span<const double> x) { return quad->evaluate<double>(x); };
    c.dual1_ = [quad](std::span<const Dual1> x) { return quad->evaluate<Dual1>(x); };
    c.dual2_ = [quad](std::span<const Dual2> x) { return quad->evaluate<Dual2>(x); };
    c.gradient_ = [quad](const Vector& x) { return quad->gradient(x); };
    c.hessian_ = [quad](const Vector&) { return quad->hessian(); };
    c.quadratic_ = quad;
    return c;
  }

  /// Wraps a callable that is generic over the scalar type, e.g.
  /// `[](auto x) { using std::exp; return exp(x[0]) * x[1]; }` where `x` is a
  /// `std::span<const T>`. Dual-number derivatives become available.
  template <class F>
  static Cost generic(std::size_t num_vars, F f) {
    Cost c(Kind::generic, num_vars);
    c.value_ = [f](std::span<const double> x) { return static_cast<double>(f(x)); };
    c.dual1_ = [f](std::span<const Dual1> x) { return Dual1(f(x)); };
    c.dual2_ = [f](std::span<const Dual2> x) { return Dual2(f(x)); };
    return c;
  }

  /// Value-only cost; only finite differences apply unless derivatives are
  /// registered with with_gradient / with_hessian.
  static Cost from_values(std::size_t num_vars, ValueFn f) {
    Cost c(Kind::generic, num_vars);
    c.value_ = std::move(f);
    return c;
  }

  Cost with_gradient(GradientFn g) const {
    Cost c = *this;
    c.gradient_ = std::move(g);
    return c;
  }
  Cost with_hessian(HessianFn h) const {
    Cost c = *this;
    c.hessian_ = std::move(h);
    return c;
  }

  Kind kind() const { return kind_; }
  std::size_t num_vars() const { return num_vars_; }
  bool has_gradient() const { return static_cast<bool>(gradient_); }
  bool has_hessian() const { return static_cast<bool>(hessian_); }
  bool has_dual() const { return dual1_ && dual2_; }
  const Polynomial* as_polynomial() const { return polynomial_.get(); }
  const QuadraticForm* as_quadratic() const { return quadratic_.get(); }

  double value(const Vector& x) const {
    return value_(std::span<const double>(x.data(), x.size()));
  }
  Dual1 value(std::span<const Dual1> x) const {
    if (!dual1_) throw MethodUnavailable("cost has no dual-number evaluator");
    return dual1_(x);
  }
  Dual2 value(std::span<const Dual2> x) const {
    if (!dual2_) throw MethodUnavailable("cost has no dual-number evaluator");
    return dual2_(x);
  }
  Vector gradient(const Vector& x) const {
    if (!gradient_) throw MethodUnavailable("cost has no analytic gradient");
    return gradient_(x);
  }
  Matrix hessian(const Vector& x) const {
    if (!hessian_) throw MethodUnavailable("cost has no analytic Hessian");
    return hessian_(x);
  }

  /// this + s * other. Derivative routes survive when both operands have them.
  Cost plus_scaled(const Cost& other, double s) const {
    if (other.num_vars_ != num_vars_) throw InputError("cost arity mismatch");
    if (polynomial_ && other.polynomial_)
      return polynomial(*polynomial_ + other.polynomial_->scaled(s));
    Cost c(Kind::generic, num_vars_);
    const Cost a = *this;
    const Cost b = other;
    c.value_ = [a, b, s](std::span<const double> x) {
      return a.value_(x) + s * b.value_(x);
    };
    if (a.has_dual() && b.has_dual()) {
      c.dual1_ = [a, b, s](std::span<const Dual1> x) { return a.dual1_(x) + s * b.dual1_(x); };
      c.dual2_ = [a, b, s](std::span<const Dual2> x) { return a.dual2_(x) + s * b.dual2_(x); };
    }
    if (a.gradient_ && b.gradient_)
      c.gradient_ = [a, b, s](const Vector& x) -> Vector {
        return a.gradient_(x) + s * b.gradient_(x);
      };
    if (a.hessian_ && b.hessian_)
      c.hessian_ = [a, b, s](const Vector& x) -> Matrix {
        return a.hessian_(x) + s * b.hessian_(x);
      };
    return c;
  }

 private:
  Cost(Kind kind, std::size_t num_vars) : kind_(kind), num_vars_(num_vars) {}

  Kind kind_;
  std::size_t num_vars_;
  ValueFn value_;
  Dual1Fn dual1_;
  Dual2Fn dual2_;
  GradientFn gradient_;
  HessianFn hessian_;
  std::shared_ptr<const Polynomial> polynomial_;
  std::shared_ptr<const QuadraticForm> quadratic_;
};

}  // namespace nashlocal
