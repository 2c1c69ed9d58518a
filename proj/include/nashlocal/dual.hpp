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

// Forward-mode dual numbers. Dual<double> carries one directional first
// derivative; Dual<Dual<double>> carries a mixed second derivative, which is
// how the calculus layer builds exact Hessian entries.

#pragma once

#include <cmath>
#include <ostream>
#include <type_traits>

namespace nashlocal {

template <class T>
struct Dual {
  T val{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v), eps(0.0) {}  // NOLINT: implicit by design of scalar promotion
  constexpr Dual(T v, T e) : val(v), eps(e) {}

  constexpr Dual& operator+=(const Dual& o) {
    val += o.val;
    eps += o.eps;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    val -= o.val;
    eps -= o.eps;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    eps = eps * o.val + val * o.eps;
    val *= o.val;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    eps = (eps * o.val - val * o.eps) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.val, -a.eps};
}
template <class T>
constexpr Dual<T> operator+(Dual<T> a, const Dual<T>& b) {
  return a += b;
}
template <class T>
constexpr Dual<T> operator-(Dual<T> a, const Dual<T>& b) {
  return a -= b;
}
template <class T>
constexpr Dual<T> operator*(Dual<T> a, const Dual<T>& b) {
  return a *= b;
}
template <class T>
constexpr Dual<T> operator/(Dual<T> a, const Dual<T>& b) {
  return a /= b;
}

template <class T>
constexpr Dual<T> operator+(Dual<T> a, double b) {
  a.val += b;
  return a;
}
template <class T>
constexpr Dual<T> operator+(double a, Dual<T> b) {
  b.val += a;
  return b;
}
template <class T>
constexpr Dual<T> operator-(Dual<T> a, double b) {
  a.val -= b;
  return a;
}
template <class T>
constexpr Dual<T> operator-(double a, const Dual<T>& b) {
  return {a - b.val, -b.eps};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, double b) {
  return {a.val * b, a.eps * b};
}
template <class T>
constexpr Dual<T> operator*(double a, const Dual<T>& b) {
  return {b.val * a, b.eps * a};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, double b) {
  return {a.val / b, a.eps / b};
}
template <class T>
constexpr Dual<T> operator/(double a, const Dual<T>& b) {
  return Dual<T>(a) / b;
}

template <class T>
constexpr bool operator<(const Dual<T>& a, const Dual<T>& b) {
  return a.val < b.val;
}
template <class T>
constexpr bool operator>(const Dual<T>& a, const Dual<T>& b) {
  return a.val > b.val;
}

// Elementary functions, found by ADL for dual arguments. Generic cost code
// should write `using std::exp; exp(x)`.
template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  const T e = exp(a.val);
  return {e, a.eps * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.val), a.eps / a.val};
}
template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.val), a.eps * cos(a.val)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.val), -(a.eps * sin(a.val))};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  const T r = sqrt(a.val);
  return {r, a.eps / (2.0 * r)};
}
template <class T>
Dual<T> tanh(const Dual<T>& a) {
  using std::tanh;
  const T t = tanh(a.val);
  return {t, a.eps * (1.0 - t * t)};
}

/// x^e for a non-negative integer exponent, by repeated squaring.
template <class T>
constexpr T ipow(const T& x, unsigned e) {
  T result(1.0);
  T base = x;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

inline constexpr double primal(double x) { return x; }
template <class T>
constexpr double primal(const Dual<T>& x) {
  return primal(x.val);
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& d) {
  return os << '(' << d.val << " + " << d.eps << "e)";
}

}  // namespace nashlocal
