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

// First and second derivatives of player costs: per-player gradients, the
// game form omega(u) (each player's gradient with respect to its own block,
// stacked in player order), per-player Hessians, and the game Jacobian
// d omega(u), whose (i, j) block differentiates player i's own gradient with
// respect to player j's strategy.

#pragma once

#include "nashlocal/cost.hpp"
#include "nashlocal/dual.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/game.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace nashlocal {

enum class DerivMethod { analytic, dual, central_fd };

inline const char* to_string(DerivMethod m) {
  switch (m) {
    case DerivMethod::analytic: return "analytic";
    case DerivMethod::dual: return "dual";
    case DerivMethod::central_fd: return "fd";
  }
  return "?";
}

inline DerivMethod parse_deriv_method(const std::string& s) {
  if (s == "analytic") return DerivMethod::analytic;
  if (s == "dual") return DerivMethod::dual;
  if (s == "fd" || s == "central_fd") return DerivMethod::central_fd;
  throw InputError("unknown derivative method '" + s + "' (expected analytic|dual|fd)");
}

/// Most exact method every cost of the game supports.
inline DerivMethod preferred_method(const Game& game) {
  if (game.all_have_analytic()) return DerivMethod::analytic;
  if (game.all_have_dual()) return DerivMethod::dual;
  return DerivMethod::central_fd;
}

struct GameFormValue {
  std::vector<Vector> blocks;
  Vector stacked;
  Vector at_point;

  double inf_norm() const { return stacked.size() ? stacked.lpNorm<Eigen::Infinity>() : 0.0; }
};

struct PlayerHessian {
  Matrix matrix;
  std::size_t player = 0;
};

struct GameJacobian {
  Matrix matrix;
  Vector at_point;
};

namespace fd {

/// Central-difference step for coordinate value x.
inline double gradient_step(double x) { return std::max(1e-6, 1e-6 * std::abs(x)); }

/// Step for second differences of cost values; larger than the gradient step
/// because roundoff enters divided by h^2.
inline double second_difference_step(double x) { return std::max(1e-4, 1e-4 * std::abs(x)); }

}  // namespace fd

namespace detail {

inline void require_finite(const Vector& v, const char* what, const Vector& u) {
  if (!v.allFinite())
    throw NumericalError(std::string("non-finite ") + what + " at " + format_vector(u));
}
inline void require_finite(const Matrix& m, const char* what, const Vector& u) {
  if (!m.allFinite())
    throw NumericalError(std::string("non-finite ") + what + " at " + format_vector(u));
}

/// Entries [row0, row0 + rows) of the gradient of `cost` at u.
inline Vector gradient_rows(const Cost& cost, const Vector& u, Eigen::Index row0,
                            Eigen::Index rows, DerivMethod method) {
  Vector g(rows);
  switch (method) {
    case DerivMethod::analytic: {
      g = cost.gradient(u).segment(row0, rows);
      break;
    }
    case DerivMethod::dual: {
      if (!cost.has_dual()) throw MethodUnavailable("cost has no dual-number evaluator");
      std::vector<Dual1> x(static_cast<std::size_t>(u.size()));
      for (Eigen::Index k = 0; k < u.size(); ++k) x[static_cast<std::size_t>(k)] = Dual1(u[k], 0.0);
      for (Eigen::Index r = 0; r < rows; ++r) {
        auto& seed = x[static_cast<std::size_t>(row0 + r)];
        seed.eps = 1.0;
        g[r] = cost.value(std::span<const Dual1>(x)).eps;
        seed.eps = 0.0;
      }
      break;
    }
    case DerivMethod::central_fd: {
      Vector x = u;
      for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index k = row0 + r;
        const double h = fd::gradient_step(u[k]);
        x[k] = u[k] + h;
        const double up = x[k];
        const double fp = cost.value(x);
        x[k] = u[k] - h;
        const double dn = x[k];
        const double fm = cost.value(x);
        x[k] = u[k];
        g[r] = (fp - fm) / (up - dn);
      }
      break;
    }
  }
  return g;
}

/// Rows [row0, row0 + rows) of the full Hessian of `cost` at u.
inline Matrix hessian_rows(const Cost& cost, const Vector& u, Eigen::Index row0,
                           Eigen::Index rows, DerivMethod method) {
  const Eigen::Index m = u.size();
  Matrix H(rows, m);
  switch (method) {
    case DerivMethod::analytic: {
      const Matrix full = cost.hessian(u);
      if (full.rows() != m || full.cols() != m)
        throw NumericalError("analytic Hessian has the wrong shape");
      H = full.middleRows(row0, rows);
      break;
    }
    case DerivMethod::dual: {
      if (!cost.has_dual()) throw MethodUnavailable("cost has no dual-number evaluator");
      std::vector<Dual2> x(static_cast<std::size_t>(m));
      for (Eigen::Index k = 0; k < m; ++k) x[static_cast<std::size_t>(k)] = Dual2(u[k]);
      for (Eigen::Index r = 0; r < rows; ++r) {
        auto& inner = x[static_cast<std::size_t>(row0 + r)];
        inner.val.eps = 1.0;
        for (Eigen::Index c = 0; c < m; ++c) {
          auto& outer = x[static_cast<std::size_t>(c)];
          outer.eps.val = 1.0;
          H(r, c) = cost.value(std::span<const Dual2>(x)).eps.eps;
          outer.eps.val = 0.0;
        }
        inner.val.eps = 0.0;
      }
      break;
    }
    case DerivMethod::central_fd: {
      Vector x = u;
      if (cost.has_gradient()) {
        // Central differences of the analytic gradient, column by column.
        for (Eigen::Index c = 0; c < m; ++c) {
          const double h = fd::gradient_step(u[c]);
          x[c] = u[c] + h;
          const double up = x[c];
          const Vector gp = cost.gradient(x).segment(row0, rows);
          x[c] = u[c] - h;
          const double dn = x[c];
          const Vector gm = cost.gradient(x).segment(row0, rows);
          x[c] = u[c];
          H.col(c) = (gp - gm) / (up - dn);
        }
      } else {
        const double f0 = cost.value(u);
        for (Eigen::Index r = 0; r < rows; ++r) {
          const Eigen::Index k = row0 + r;
          const double hk = fd::second_difference_step(u[k]);
          for (Eigen::Index c = 0; c < m; ++c) {
            if (c == k) {
              x[k] = u[k] + hk;
              const double fp = cost.value(x);
              x[k] = u[k] - hk;
              const double fm = cost.value(x);
              x[k] = u[k];
              H(r, c) = (fp - 2.0 * f0 + fm) / (hk * hk);
            } else {
              const double hc = fd::second_difference_step(u[c]);
              auto eval = [&](double sk, double sc) {
                x[k] = u[k] + sk * hk;
                x[c] = u[c] + sc * hc;
                const double v = cost.value(x);
                x[k] = u[k];
                x[c] = u[c];
                return v;
              };
              H(r, c) = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * hk * hc);
            }
          }
        }
      }
      break;
    }
  }
  return H;
}

}  // namespace detail

/// D_i f_i(u): gradient of player i's cost with respect to its own block.
inline Vector player_gradient(const Game& game, std::size_t i, const Vector& u,
                              DerivMethod method) {
  game.check_player(i);
  game.check_strategy(u);
  Vector g = detail::gradient_rows(game.cost(i), u, static_cast<Eigen::Index>(game.offset(i)),
                                   static_cast<Eigen::Index>(game.dim(i)), method);
  detail::require_finite(g, "gradient", u);
  return g;
}

inline GameFormValue game_form(const Game& game, const Vector& u, DerivMethod method) {
  game.check_strategy(u);
  GameFormValue out;
  out.at_point = u;
  out.stacked.resize(static_cast<Eigen::Index>(game.total_dim()));
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    out.blocks.push_back(player_gradient(game, i, u, method));
    out.stacked.segment(static_cast<Eigen::Index>(game.offset(i)),
                        static_cast<Eigen::Index>(game.dim(i))) = out.blocks.back();
  }
  return out;
}

/// D^2_ii f_i(u), symmetrized as (H + H^T) / 2.
inline PlayerHessian player_hessian(const Game& game, std::size_t i, const Vector& u,
                                    DerivMethod method) {
  game.check_player(i);
  game.check_strategy(u);
  const auto off = static_cast<Eigen::Index>(game.offset(i));
  const auto mi = static_cast<Eigen::Index>(game.dim(i));
  const Matrix rows = detail::hessian_rows(game.cost(i), u, off, mi, method);
  Matrix H = rows.middleCols(off, mi);
  detail::require_finite(H, "Hessian", u);
  return {0.5 * (H + H.transpose()), i};
}

/// d omega(u); never symmetrized.
inline GameJacobian game_jacobian(const Game& game, const Vector& u, DerivMethod method) {
  game.check_strategy(u);
  const auto m = static_cast<Eigen::Index>(game.total_dim());
  GameJacobian out{Matrix(m, m), u};
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto off = static_cast<Eigen::Index>(game.offset(i));
    const auto mi = static_cast<Eigen::Index>(game.dim(i));
    out.matrix.middleRows(off, mi) = detail::hessian_rows(game.cost(i), u, off, mi, method);
  }
  detail::require_finite(out.matrix, "game Jacobian", u);
  return out;
}

}  // namespace nashlocal
