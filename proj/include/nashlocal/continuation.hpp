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

// Tracking a non-degenerate differential Nash equilibrium of
// (f_1 + s zeta_1, ..., f_n + s zeta_n) as s varies. Each step predicts with
// the implicit-function tangent d omega_s sigma' = -d/ds omega_s and corrects
// with Newton on the perturbed game.

#pragma once

#include "nashlocal/calculus.hpp"
#include "nashlocal/classify.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/game.hpp"
#include "nashlocal/solve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace nashlocal {

/// The game with costs f_i + s * zeta_i.
inline Game perturbed_game(const Game& game, const std::vector<Cost>& zeta, double s) {
  if (zeta.size() != game.num_players())
    throw InputError("expected one perturbation per player");
  std::vector<Cost> costs;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    if (zeta[i].num_vars() != game.total_dim())
      throw InputError("perturbation " + std::to_string(i + 1) + " has the wrong arity");
    costs.push_back(game.cost(i).plus_scaled(zeta[i], s));
  }
  return Game(game.dims(), std::move(costs));
}

/// The game whose costs are the perturbations themselves; its game form is
/// d/ds omega_s.
inline Game perturbation_game(const Game& game, const std::vector<Cost>& zeta) {
  return Game(game.dims(), zeta);
}

/// Implicit-function tangent sigma'(s) at an equilibrium u of the s-perturbed game.
inline Vector equilibrium_tangent(const Game& game, const std::vector<Cost>& zeta, double s,
                                  const Vector& u, std::optional<DerivMethod> method = std::nullopt) {
  const Game gs = perturbed_game(game, zeta, s);
  const Game dz = perturbation_game(game, zeta);
  const DerivMethod dm = method.value_or(preferred_method(gs));
  const Matrix J = game_jacobian(gs, u, dm).matrix;
  const Vector ds = game_form(dz, u, method.value_or(preferred_method(dz))).stacked;
  return J.fullPivLu().solve(-ds);
}

struct ContinuationOptions {
  double s_min = 0.0;
  double s_max = 1.0;
  double ds = 0.1;
  /// sigma_min / sigma_max of d omega_s below which a fold is reported.
  double fold_tol = 1e-8;
  NewtonOptions newton;
  Tolerances tolerances;

  void validate() const {
    if (!(ds > 0) || !(s_min <= 0.0) || !(s_max >= 0.0) || !(fold_tol > 0))
      throw InputError("continuation needs ds > 0 and s_min <= 0 <= s_max");
  }
};

enum class PathStatus { complete, fold_detected, lost_track };

inline const char* to_string(PathStatus p) {
  switch (p) {
    case PathStatus::complete: return "complete";
    case PathStatus::fold_detected: return "fold_detected";
    case PathStatus::lost_track: return "lost_track";
  }
  return "?";
}

struct ContinuationPath {
  std::vector<double> s_values;
  std::vector<Vector> points;
  std::vector<EquilibriumReport> reports;
  PathStatus status = PathStatus::complete;
  /// Parameter value where tracking stopped, for fold_detected / lost_track.
  double status_s = 0.0;
  std::string reason;
};

/// Traces sigma(s) from u_star at s = 0 out to s_max and back to s_min. Throws
/// PreconditionError unless u_star is a non-degenerate differential Nash
/// equilibrium of the unperturbed game.
inline ContinuationPath continue_path(const Game& game, const std::vector<Cost>& zeta,
                                      const Vector& u_star, const ContinuationOptions& opt = {}) {
  opt.validate();
  game.check_strategy(u_star);
  const EquilibriumReport start = classify_point(game, u_star, opt.tolerances, opt.newton.method);
  if (!start.classification.is_nondegenerate_nash())
    throw PreconditionError("continuation refused: initial point is " +
                            start.classification.describe() +
                            ", not a non-degenerate differential Nash equilibrium");
  // Fails early on arity problems.
  (void)perturbed_game(game, zeta, 0.0);

  // Polish the start so every stored point meets the Newton residual tolerance.
  Vector origin = u_star;
  EquilibriumReport origin_report = start;
  if (NewtonResult nr = newton_solve(game, u_star, opt.newton); nr.converged()) {
    origin = nr.point;
    origin_report = *nr.report;
  }

  struct Branch {
    std::vector<double> s;
    std::vector<Vector> pts;
    std::vector<EquilibriumReport> reps;
    PathStatus status = PathStatus::complete;
    double status_s = 0.0;
    std::string reason;
  };

  auto trace = [&](double direction, double s_end) {
    Branch b;
    Vector u = origin;
    double s = 0.0;
    for (long k = 1; direction * s < direction * s_end; ++k) {
      const double s_next = direction > 0 ? std::min(k * opt.ds, s_end) : std::max(-k * opt.ds, s_end);
      const Vector tangent = equilibrium_tangent(game, zeta, s, u, opt.newton.method);
      const Vector guess = u + (s_next - s) * tangent;
      const Game gs = perturbed_game(game, zeta, s_next);
      NewtonResult nr = newton_solve(gs, guess.allFinite() ? guess : u, opt.newton);
      if (!nr.converged()) {
        b.status = PathStatus::lost_track;
        b.status_s = s_next;
        b.reason = std::string("corrector failed: ") + to_string(nr.status);
        return b;
      }
      const EquilibriumReport rep = classify_point(gs, nr.point, opt.tolerances, opt.newton.method);
      if (rep.relative_sigma_min() < opt.fold_tol) {
        b.status = PathStatus::fold_detected;
        b.status_s = s_next;
        b.reason = "d omega_s became singular";
        return b;
      }
      if (!rep.classification.is_nondegenerate_nash()) {
        b.status = PathStatus::lost_track;
        b.status_s = s_next;
        b.reason = "equilibrium became " + rep.classification.describe();
        return b;
      }
      u = nr.point;
      s = s_next;
      b.s.push_back(s);
      b.pts.push_back(u);
      b.reps.push_back(rep);
    }
    return b;
  };

  const Branch fwd = trace(+1.0, opt.s_max);
  const Branch bwd = trace(-1.0, opt.s_min);

  ContinuationPath path;
  for (std::size_t k = bwd.s.size(); k-- > 0;) {
    path.s_values.push_back(bwd.s[k]);
    path.points.push_back(bwd.pts[k]);
    path.reports.push_back(bwd.reps[k]);
  }
  path.s_values.push_back(0.0);
  path.points.push_back(origin);
  path.reports.push_back(origin_report);
  for (std::size_t k = 0; k < fwd.s.size(); ++k) {
    path.s_values.push_back(fwd.s[k]);
    path.points.push_back(fwd.pts[k]);
    path.reports.push_back(fwd.reps[k]);
  }
  const Branch& failed = fwd.status != PathStatus::complete ? fwd : bwd;
  path.status = failed.status;
  path.status_s = failed.status_s;
  path.reason = failed.reason;
  return path;
}

}  // namespace nashlocal
