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

// Classification of a joint strategy.
//
//   ||omega(u)||_inf > critical            -> not critical
//   some Hessian eigenvalue < -eigen       -> second-order condition violated
//   all Hessian eigenvalues > eigen        -> differential Nash
//   otherwise                              -> necessary conditions only
//
// A differential Nash equilibrium is degenerate when
// sigma_min(d omega) <= singular * sigma_max(d omega). Gradient play is stable
// at it when every eigenvalue of d omega has real part > eigen, unstable when
// some real part is < -eigen, and marginal otherwise.

#pragma once

#include "nashlocal/calculus.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/game.hpp"
#include "nashlocal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace nashlocal {

struct Tolerances {
  double critical = 1e-8;
  double eigen = 1e-8;
  double singular = 1e-10;

  void validate() const {
    if (!(critical > 0) || !(eigen > 0) || !(singular > 0))
      throw InputError("tolerances must be positive");
  }
};

enum class Verdict { not_critical, second_order_violated, necessary_only, differential_nash };
enum class FlowStability { stable, unstable, marginal };

inline const char* to_string(FlowStability f) {
  switch (f) {
    case FlowStability::stable: return "stable";
    case FlowStability::unstable: return "unstable";
    case FlowStability::marginal: return "marginal";
  }
  return "?";
}

/// `degenerate` and `flow` are meaningful only for differential Nash verdicts.
struct Classification {
  Verdict verdict = Verdict::not_critical;
  bool degenerate = false;
  FlowStability flow = FlowStability::marginal;

  bool is_differential_nash() const { return verdict == Verdict::differential_nash; }
  bool is_nondegenerate_nash() const { return is_differential_nash() && !degenerate; }

  std::string describe() const {
    switch (verdict) {
      case Verdict::not_critical: return "not critical";
      case Verdict::second_order_violated: return "second-order condition violated";
      case Verdict::necessary_only: return "necessary conditions only";
      case Verdict::differential_nash:
        if (degenerate) return "differential Nash (degenerate)";
        return std::string("differential Nash (non-degenerate, ") + to_string(flow) + ")";
    }
    return "?";
  }

  /// Short code used in CSV rows.
  std::string code() const {
    switch (verdict) {
      case Verdict::not_critical: return "NC";
      case Verdict::second_order_violated: return "SOV";
      case Verdict::necessary_only: return "NEC";
      case Verdict::differential_nash:
        if (degenerate) return "DN-D";
        switch (flow) {
          case FlowStability::stable: return "DN-S";
          case FlowStability::unstable: return "DN-U";
          case FlowStability::marginal: return "DN-M";
        }
    }
    return "?";
  }
};

struct EquilibriumReport {
  Vector point;
  Vector omega;
  double omega_norm = 0.0;
  std::vector<std::vector<double>> hessian_spectra;
  std::vector<double> jacobian_singular_values;
  std::vector<std::complex<double>> jacobian_eigenvalues;
  Classification classification;
  Tolerances tolerances;
  std::string method;

  double relative_sigma_min() const { return spectral::relative_sigma_min(jacobian_singular_values); }
  /// d omega singular under the stored tolerance, whatever the verdict.
  bool jacobian_degenerate() const { return relative_sigma_min() <= tolerances.singular; }
  double min_hessian_eigenvalue(std::size_t player) const {
    return hessian_spectra.at(player).front();
  }
};

/// Applies the decision table to precomputed derivative data. Shared by the
/// finite-dimensional classifier and the discretized open-loop classifier.
inline EquilibriumReport classify_from_derivatives(const Vector& point, const Vector& omega,
                                                   const std::vector<Matrix>& player_hessians,
                                                   const Matrix& jacobian, const Tolerances& tol,
                                                   std::string method) {
  tol.validate();
  EquilibriumReport r;
  r.point = point;
  r.omega = omega;
  r.omega_norm = omega.size() ? omega.lpNorm<Eigen::Infinity>() : 0.0;
  r.tolerances = tol;
  r.method = std::move(method);
  for (const auto& H : player_hessians)
    r.hessian_spectra.push_back(spectral::symmetric_eigenvalues(0.5 * (H + H.transpose())));
  r.jacobian_singular_values = spectral::singular_values(jacobian);
  r.jacobian_eigenvalues = spectral::eigenvalues(jacobian);

  Classification& c = r.classification;
  if (!(r.omega_norm <= tol.critical)) {
    c.verdict = Verdict::not_critical;
    return r;
  }
  bool negative = false;
  bool all_positive = true;
  for (const auto& spectrum : r.hessian_spectra)
    for (double ev : spectrum) {
      if (ev < -tol.eigen) negative = true;
      if (!(ev > tol.eigen)) all_positive = false;
    }
  if (negative) {
    c.verdict = Verdict::second_order_violated;
  } else if (!all_positive) {
    c.verdict = Verdict::necessary_only;
  } else {
    c.verdict = Verdict::differential_nash;
    c.degenerate = r.jacobian_degenerate();
    bool stable = true;
    bool unstable = false;
    for (const auto& ev : r.jacobian_eigenvalues) {
      if (!(ev.real() > tol.eigen)) stable = false;
      if (ev.real() < -tol.eigen) unstable = true;
    }
    c.flow = stable ? FlowStability::stable
                    : (unstable ? FlowStability::unstable : FlowStability::marginal);
  }
  return r;
}

inline EquilibriumReport classify_point(const Game& game, const Vector& u,
                                        const Tolerances& tol = {},
                                        std::optional<DerivMethod> method = std::nullopt) {
  const DerivMethod dm = method.value_or(preferred_method(game));
  const GameFormValue omega = game_form(game, u, dm);
  std::vector<Matrix> hessians;
  for (std::size_t i = 0; i < game.num_players(); ++i)
    hessians.push_back(player_hessian(game, i, u, dm).matrix);
  const GameJacobian J = game_jacobian(game, u, dm);
  return classify_from_derivatives(u, omega.stacked, hessians, J.matrix, tol, to_string(dm));
}

enum class OracleVerdict { confirmed_strict, violated, inconclusive };

inline const char* to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::confirmed_strict: return "confirmed_strict";
    case OracleVerdict::violated: return "violated";
    case OracleVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::inconclusive;
  /// For `violated`: the deviating player and its deviated joint strategy.
  std::size_t player = 0;
  Vector witness;
  double cost_drop = 0.0;
};

/// Brute-force unilateral-deviation check on a grid. For every player, the
/// player's own block is moved over a `points_per_axis`^m_i lattice spanning
/// [-radius, radius] per axis, restricted to the Euclidean ball, with the
/// other blocks held fixed. Ties (exactly equal cost) make the result
/// inconclusive unless some deviation is strictly better.
inline OracleResult local_nash_oracle(const Game& game, const Vector& u, double radius,
                                      int points_per_axis) {
  game.check_strategy(u);
  if (game.total_dim() > 4)
    throw DimensionError("local Nash oracle supports total dimension <= 4, got " +
                         std::to_string(game.total_dim()));
  if (!(radius > 0)) throw InputError("oracle radius must be positive");
  if (points_per_axis < 3 || points_per_axis % 2 == 0)
    throw InputError("oracle grid needs an odd number >= 3 of points per axis");

  OracleResult result;
  result.verdict = OracleVerdict::confirmed_strict;
  const int half = points_per_axis / 2;
  const double spacing = radius / half;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const double base = game.eval_cost(i, u);
    const std::size_t mi = game.dim(i);
    const auto off = static_cast<Eigen::Index>(game.offset(i));
    std::vector<int> idx(mi, -half);
    Vector x = u;
    while (true) {
      bool center = true;
      double norm2 = 0.0;
      for (std::size_t a = 0; a < mi; ++a) {
        const double d = idx[a] * spacing;
        center = center && idx[a] == 0;
        norm2 += d * d;
        x[off + static_cast<Eigen::Index>(a)] = u[off + static_cast<Eigen::Index>(a)] + d;
      }
      if (!center && norm2 <= radius * radius * (1.0 + 1e-12)) {
        const double v = game.eval_cost(i, x);
        if (v < base) {
          if (result.verdict != OracleVerdict::violated || base - v > result.cost_drop) {
            result.verdict = OracleVerdict::violated;
            result.player = i;
            result.witness = x;
            result.cost_drop = base - v;
          }
        } else if (v == base && result.verdict == OracleVerdict::confirmed_strict) {
          result.verdict = OracleVerdict::inconclusive;
        }
      }
      std::size_t a = 0;
      while (a < mi && ++idx[a] > half) idx[a++] = -half;
      if (a == mi) break;
    }
  }
  return result;
}

}  // namespace nashlocal
