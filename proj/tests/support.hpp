// Test-side reference computations. Nothing here calls into the library's
// derivative or spectral code.

#pragma once

#include "nashlocal/nashlocal.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using nashlocal::Matrix;
using nashlocal::Vector;
using Fn = std::function<double(const Vector&)>;

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_err(const Vector& a, const Vector& b) {
  const double scale = std::max({1.0, a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()});
  return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

inline double rel_err(const Matrix& a, const Matrix& b) {
  const double scale = std::max({1.0, a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()});
  return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

/// Fourth-order five-point first derivative.
inline double d1(const std::function<double(double)>& g, double h) {
  return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h);
}

inline Vector gradient(const Fn& f, const Vector& x, double h = 1e-3) {
  Vector g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k)
    g[k] = d1(
        [&](double t) {
          Vector y = x;
          y[k] += t;
          return f(y);
        },
        h);
  return g;
}

/// Nested five-point stencils; exact up to roundoff for polynomials of degree <= 4.
inline Matrix hessian(const Fn& f, const Vector& x, double h = 1e-2) {
  const Eigen::Index m = x.size();
  Matrix H(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      H(r, c) = d1(
          [&](double s) {
            return d1(
                [&](double t) {
                  Vector y = x;
                  y[r] += t;
                  y[c] += s;
                  return f(y);
                },
                h);
          },
          h);
  return H;
}

/// Closed-form eigenvalues of [[a, b], [c, d]], sorted by real part.
inline std::vector<std::complex<double>> eig2(double a, double b, double c, double d) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4 - det));
  std::vector<std::complex<double>> ev{tr / 2 - disc, tr / 2 + disc};
  std::sort(ev.begin(), ev.end(), [](auto p, auto q) { return p.real() < q.real(); });
  return ev;
}

inline Vector uniform_point(std::mt19937_64& rng, Eigen::Index m, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector x(m);
  for (Eigen::Index k = 0; k < m; ++k) x[k] = u(rng);
  return x;
}

inline Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double d : v) x[k++] = d;
  return x;
}

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix M(2, 2);
  M << a, b, c, d;
  return M;
}

/// Builtin games with the parameter values used across the suite.
inline std::vector<std::pair<std::string, nashlocal::Game>> builtin_zoo() {
  using namespace nashlocal::builtin;
  return {{"betty_sue", betty_sue()},
          {"betty_sue_asym(2)", betty_sue_asym(2.0)},
          {"betty_sue_asym(0.5)", betty_sue_asym(0.5)},
          {"betty_sue_asym(-1)", betty_sue_asym(-1.0)},
          {"betty_sue_perturbed(0.1)", betty_sue_perturbed(0.1)},
          {"betty_sue_perturbed(-0.01)", betty_sue_perturbed(-0.01)},
          {"incentive_game(1,20)", incentive_game(1.0, 20.0)},
          {"incentive_game(-0.5,0)", incentive_game(-0.5, 0.0)},
          {"incentive_game(0,5)", incentive_game(0.0, 5.0)}};
}

/// Hand-written costs of the builtins, f(u1, u2).
inline double betty(double a, double eps, double u1, double u2) {
  return u1 * u1 / 2 - a * u1 * u2 + eps * u1;
}
inline double sue(double u1, double u2) { return u2 * u2 / 2 - u1 * u2; }

}  // namespace oracle
