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

// Gradient play: every player descends its own cost along its own block,
// u' = -omega(u). Block i of the vector field depends only on f_i.

#pragma once

#include "nashlocal/calculus.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/game.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace nashlocal {

namespace odeint = boost::numeric::odeint;

enum class Integrator { rk4, rk45 };

inline Integrator parse_integrator(const std::string& s) {
  if (s == "rk4") return Integrator::rk4;
  if (s == "rk45") return Integrator::rk45;
  throw InputError("unknown integrator '" + s + "' (expected rk4|rk45)");
}
inline const char* to_string(Integrator i) { return i == Integrator::rk4 ? "rk4" : "rk45"; }

struct FlowOptions {
  Integrator integrator = Integrator::rk45;
  /// Fixed step for rk4; initial step for rk45.
  double dt = 1e-2;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_max = 20.0;
  /// Converged once ||omega||_inf <= stop_tol.
  double stop_tol = 1e-7;
  /// Diverged once ||u||_inf >= norm_bound.
  double norm_bound = 1e6;
  std::size_t max_steps = 2'000'000;
  std::optional<DerivMethod> method;

  void validate() const {
    if (!(t_max > 0) || !(dt > 0) || !(rel_tol > 0) || !(abs_tol > 0) || !(stop_tol > 0) ||
        !(norm_bound > 0))
      throw InputError("invalid flow options");
  }
};

enum class FlowOutcome { converged, diverged, max_time };

inline const char* to_string(FlowOutcome o) {
  switch (o) {
    case FlowOutcome::converged: return "converged";
    case FlowOutcome::diverged: return "diverged";
    case FlowOutcome::max_time: return "max_time";
  }
  return "?";
}

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<Vector> points;
  std::vector<double> omega_norms;
  FlowOutcome outcome = FlowOutcome::max_time;

  const Vector& final_point() const { return points.back(); }
};

inline FlowTrajectory gradient_play(const Game& game, const Vector& u0, const FlowOptions& opt = {}) {
  opt.validate();
  game.check_strategy(u0);
  const DerivMethod dm = opt.method.value_or(preferred_method(game));

  FlowTrajectory traj;
  auto record = [&](double t, const Vector& u) -> bool {
    const double w = game_form(game, u, dm).inf_norm();
    traj.times.push_back(t);
    traj.points.push_back(u);
    traj.omega_norms.push_back(w);
    if (w <= opt.stop_tol) {
      traj.outcome = FlowOutcome::converged;
      return true;
    }
    if (u.lpNorm<Eigen::Infinity>() >= opt.norm_bound) {
      traj.outcome = FlowOutcome::diverged;
      return true;
    }
    return false;
  };
  auto field = [&](const Vector& u, Vector& du, double) {
    if (!u.allFinite()) {
      du = Vector::Constant(u.size(), std::numeric_limits<double>::quiet_NaN());
      return;
    }
    try {
      du = -game_form(game, u, dm).stacked;
    } catch (const NumericalError&) {
      du = Vector::Constant(u.size(), std::numeric_limits<double>::quiet_NaN());
    }
  };
  auto check = [&](const Vector& u) {
    if (!u.allFinite())
      throw NumericalError("gradient play produced a non-finite state after t = " +
                           std::to_string(traj.times.back()));
  };

  Vector u = u0;
  if (record(0.0, u)) return traj;

  if (opt.integrator == Integrator::rk4) {
    odeint::runge_kutta4<Vector, double, Vector, double, odeint::vector_space_algebra> stepper;
    for (std::size_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * opt.dt;
      if (t >= opt.t_max) break;
      const double t_next = std::min(static_cast<double>(k + 1) * opt.dt, opt.t_max);
      stepper.do_step(field, u, t, t_next - t);
      check(u);
      if (record(t_next, u)) return traj;
      if (k + 1 >= opt.max_steps) break;
    }
  } else {
    using Dopri = odeint::runge_kutta_dopri5<Vector, double, Vector, double, odeint::vector_space_algebra>;
    using Checker = odeint::default_error_checker<double, odeint::vector_space_algebra, odeint::default_operations>;
    // Relative error is scaled by the step increment dt*|u'|, not by |u|.
    odeint::controlled_runge_kutta<Dopri, Checker> stepper(Checker(opt.abs_tol, opt.rel_tol, 0.0, 1.0));
    double t = 0.0;
    double dt = opt.dt;
    std::size_t attempts = 0;
    while (t < opt.t_max && attempts < opt.max_steps) {
      ++attempts;
      double step = std::min(dt, opt.t_max - t);
      const bool last = step >= opt.t_max - t;
      double t_try = t;
      const auto result = stepper.try_step(field, u, t_try, step);
      dt = step;
      if (result != odeint::success) {
        if (!(dt > 0) || !std::isfinite(dt))
          throw NumericalError("adaptive step size collapsed at t = " + std::to_string(t));
        continue;
      }
      check(u);
      t = last ? opt.t_max : t_try;
      if (record(t, u)) return traj;
    }
  }
  traj.outcome = FlowOutcome::max_time;
  return traj;
}

}  // namespace nashlocal
