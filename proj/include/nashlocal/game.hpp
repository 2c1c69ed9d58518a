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

#include "nashlocal/cost.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/polynomial.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace nashlocal {

/// An n-player game on R^{m_1} x ... x R^{m_n}. Each cost f_i is a function of
/// the full joint strategy; player i controls only its own block. Players are
/// indexed from zero.
class Game {
 public:
  Game(std::vector<std::size_t> dims, std::vector<Cost> costs,
       std::vector<std::string> labels = {})
      : dims_(std::move(dims)), costs_(std::move(costs)), labels_(std::move(labels)) {
    if (dims_.empty()) throw InputError("a game needs at least one player");
    if (costs_.size() != dims_.size())
      throw InputError("expected " + std::to_string(dims_.size()) + " costs, got " +
                       std::to_string(costs_.size()));
    offsets_.reserve(dims_.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] == 0)
        throw InputError("player " + std::to_string(i + 1) + " has zero strategy dimension");
      offsets_.push_back(off);
      off += dims_[i];
    }
    total_ = off;
    for (std::size_t i = 0; i < costs_.size(); ++i)
      if (costs_[i].num_vars() != total_)
        throw InputError("cost of player " + std::to_string(i + 1) + " takes " +
                         std::to_string(costs_[i].num_vars()) + " variables, expected " +
                         std::to_string(total_));
    if (labels_.empty())
      for (std::size_t i = 0; i < dims_.size(); ++i)
        labels_.push_back("player" + std::to_string(i + 1));
    if (labels_.size() != dims_.size()) throw InputError("label count does not match players");
  }

  std::size_t num_players() const { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t total_dim() const { return total_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const Cost& cost(std::size_t i) const { return costs_.at(i); }
  const std::vector<Cost>& costs() const { return costs_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  void check_player(std::size_t i) const {
    if (i >= num_players())
      throw InputError("player index " + std::to_string(i) + " out of range [0, " +
                       std::to_string(num_players()) + ")");
  }

  /// Throws unless `u` is a finite joint strategy of the right length.
  void check_strategy(const Vector& u) const {
    if (static_cast<std::size_t>(u.size()) != total_)
      throw InputError("joint strategy has length " + std::to_string(u.size()) +
                       ", expected " + std::to_string(total_));
    if (!u.allFinite()) throw InputError("joint strategy has non-finite entries");
  }

  auto block(const Vector& u, std::size_t i) const {
    return u.segment(static_cast<Eigen::Index>(offset(i)), static_cast<Eigen::Index>(dim(i)));
  }

  double eval_cost(std::size_t i, const Vector& u) const {
    check_player(i);
    check_strategy(u);
    const double v = costs_[i].value(u);
    if (!std::isfinite(v))
      throw NumericalError("cost of player " + std::to_string(i + 1) +
                           " is non-finite at " + detail::format_vector(u));
    return v;
  }

  bool all_have_analytic() const {
    for (const auto& c : costs_)
      if (!c.has_gradient() || !c.has_hessian()) return false;
    return true;
  }
  bool all_have_dual() const {
    for (const auto& c : costs_)
      if (!c.has_dual()) return false;
    return true;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::vector<Cost> costs_;
  std::vector<std::string> labels_;
};

namespace builtin {

namespace detail {

inline std::vector<unsigned> exps(unsigned e1, unsigned e2) { return {e1, e2}; }

// u1^2/2 - a*u1*u2 + eps*u1
inline Polynomial betty_cost(double a, double eps) {
  Polynomial p(2);
  p.add_term(0.5, exps(2, 0)).add_term(-a, exps(1, 1));
  if (eps != 0.0) p.add_term(eps, exps(1, 0));
  return p;
}

// u2^2/2 - u1*u2
inline Polynomial sue_cost() {
  Polynomial p(2);
  p.add_term(0.5, exps(0, 2)).add_term(-1.0, exps(1, 1));
  return p;
}

// (a/2)(u_k - tau)^2 in the k-th of two variables.
inline Polynomial incentive_term(std::size_t k, double a, double tau) {
  Polynomial p(2);
  auto e = [k](unsigned d) { return k == 0 ? exps(d, 0) : exps(0, d); };
  p.add_term(0.5 * a, e(2)).add_term(-a * tau, e(1)).add_term(0.5 * a * tau * tau, e(0));
  return p;
}

}  // namespace detail

/// Two players on R with f1 = u1^2/2 - u1 u2 and f2 = u2^2/2 - u1 u2; every
/// point of the diagonal u1 = u2 is a degenerate differential Nash equilibrium.
inline Game betty_sue() {
  return Game({1, 1},
              {Cost::polynomial(detail::betty_cost(1.0, 0.0)),
               Cost::polynomial(detail::sue_cost())},
              {"betty", "sue"});
}

/// Betty's coupling scaled by `a`: f1 = u1^2/2 - a u1 u2, f2 unchanged.
inline Game betty_sue_asym(double a) {
  return Game({1, 1},
              {Cost::polynomial(detail::betty_cost(a, 0.0)),
               Cost::polynomial(detail::sue_cost())},
              {"betty", "sue"});
}

/// Betty's cost tilted by eps*u1; for eps != 0 no critical point exists.
inline Game betty_sue_perturbed(double eps) {
  return Game({1, 1},
              {Cost::polynomial(detail::betty_cost(1.0, eps)),
               Cost::polynomial(detail::sue_cost())},
              {"betty", "sue"});
}

/// A planner adds (a/2)(u_i - tau)^2 to each player's cost so that (tau, tau)
/// becomes the equilibrium.
inline Game incentive_game(double a, double tau) {
  return Game({1, 1},
              {Cost::polynomial(detail::betty_cost(1.0, 0.0) + detail::incentive_term(0, a, tau)),
               Cost::polynomial(detail::sue_cost() + detail::incentive_term(1, a, tau))},
              {"betty", "sue"});
}

inline double param(const std::map<std::string, double>& params, const std::string& key,
                    double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

/// Resolves a builtin family by name. Recognized parameters: `a` for
/// betty_sue_asym (default 1), `eps` for betty_sue_perturbed (default 0),
/// `a` and `tau` for incentive_game (defaults 1 and 0).
inline Game family(const std::string& name, const std::map<std::string, double>& params = {}) {
  for (const auto& [key, value] : params)
    if (!std::isfinite(value)) throw InputError("builtin parameter '" + key + "' is not finite");
  if (name == "betty_sue") return betty_sue();
  if (name == "betty_sue_asym") return betty_sue_asym(param(params, "a", 1.0));
  if (name == "betty_sue_perturbed")
    return betty_sue_perturbed(param(params, "eps", param(params, "epsilon", 0.0)));
  if (name == "incentive_game")
    return incentive_game(param(params, "a", 1.0), param(params, "tau", 0.0));
  throw InputError("unknown builtin game '" + name + "'");
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"betty_sue", "betty_sue_asym", "betty_sue_perturbed",
                                          "incentive_game"};
  return n;
}

}  // namespace builtin
}  // namespace nashlocal
