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

// Open-loop differential games in Mayer form.
//
// Shared state x' = h(x, u_1, ..., u_n) on [0, T], x(0) = x0; player i pays
// fhat_i(x(T)). Controls are piecewise constant on a uniform grid of N
// intervals. Player i's costate runs backward from p_i(T) = D fhat_i(x(T))
// under p_i' = -p_i dh/dx, and the gradient of its cost with respect to its
// control on interval k is sampled at the interval midpoint:
//
//   g_k = p_i(tbar_k) dh/du_i(x(tbar_k), u(k))
//
// Gradients are per unit time: the rolled-out cost changes by (T/N) g_k per
// unit change of the interval-k control. Running costs are expressed by state
// augmentation, e.g. augment_control_penalty.

#pragma once

#include "nashlocal/classify.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/polynomial.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nashlocal {

/// Controls of all players on one interval.
using ControlSlice = std::vector<Vector>;

struct Dynamics {
  using Field = std::function<Vector(const Vector& x, const ControlSlice& u)>;
  using StateJacobian = std::function<Matrix(const Vector& x, const ControlSlice& u)>;
  using ControlJacobian =
      std::function<Matrix(const Vector& x, const ControlSlice& u, std::size_t player)>;

  Field field;
  /// Optional; central differences of `field` are used when absent.
  StateJacobian state_jacobian;
  ControlJacobian control_jacobian;
};

struct TerminalCost {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

class OpenLoopGame {
 public:
  OpenLoopGame(std::size_t state_dim, double horizon, std::size_t steps, Vector x0,
               std::vector<std::size_t> control_dims, Dynamics dynamics,
               std::vector<TerminalCost> terminal_costs)
      : state_dim_(state_dim),
        horizon_(horizon),
        steps_(steps),
        x0_(std::move(x0)),
        control_dims_(std::move(control_dims)),
        dynamics_(std::move(dynamics)),
        terminal_costs_(std::move(terminal_costs)) {
    if (state_dim_ == 0) throw InputError("state dimension must be positive");
    if (!(horizon_ > 0) || !std::isfinite(horizon_)) throw InputError("horizon must be positive");
    if (steps_ == 0) throw InputError("steps must be positive");
    if (static_cast<std::size_t>(x0_.size()) != state_dim_ || !x0_.allFinite())
      throw InputError("x0 must be a finite vector of length state_dim");
    if (control_dims_.empty()) throw InputError("need at least one player");
    for (auto k : control_dims_)
      if (k == 0) throw InputError("control dimensions must be positive");
    if (terminal_costs_.size() != control_dims_.size())
      throw InputError("expected one terminal cost per player");
    if (!dynamics_.field) throw InputError("dynamics field is missing");
    for (const auto& c : terminal_costs_)
      if (!c.value || !c.gradient) throw InputError("terminal cost needs value and gradient");
  }

  std::size_t state_dim() const { return state_dim_; }
  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  double dt() const { return horizon_ / static_cast<double>(steps_); }
  double time(std::size_t k) const { return horizon_ * static_cast<double>(k) / static_cast<double>(steps_); }
  const Vector& x0() const { return x0_; }
  std::size_t num_players() const { return control_dims_.size(); }
  std::size_t control_dim(std::size_t i) const { return control_dims_.at(i); }
  const std::vector<std::size_t>& control_dims() const { return control_dims_; }
  const Dynamics& dynamics() const { return dynamics_; }
  const TerminalCost& terminal_cost(std::size_t i) const { return terminal_costs_.at(i); }

  /// N * sum_i k_i, the dimension of the discretized joint strategy space.
  std::size_t total_controls() const {
    std::size_t s = 0;
    for (auto k : control_dims_) s += k;
    return s * steps_;
  }

  Vector field(const Vector& x, const ControlSlice& u) const { return dynamics_.field(x, u); }

  Matrix state_jacobian(const Vector& x, const ControlSlice& u) const {
    if (dynamics_.state_jacobian) return dynamics_.state_jacobian(x, u);
    const auto d = static_cast<Eigen::Index>(state_dim_);
    Matrix J(d, d);
    Vector xp = x;
    for (Eigen::Index c = 0; c < d; ++c) {
      const double h = std::max(1e-6, 1e-6 * std::abs(x[c]));
      xp[c] = x[c] + h;
      const Vector fp = field(xp, u);
      xp[c] = x[c] - h;
      const Vector fm = field(xp, u);
      xp[c] = x[c];
      J.col(c) = (fp - fm) / (2.0 * h);
    }
    return J;
  }

  Matrix control_jacobian(const Vector& x, const ControlSlice& u, std::size_t i) const {
    if (dynamics_.control_jacobian) return dynamics_.control_jacobian(x, u, i);
    const auto ki = static_cast<Eigen::Index>(control_dim(i));
    Matrix J(static_cast<Eigen::Index>(state_dim_), ki);
    ControlSlice up = u;
    for (Eigen::Index c = 0; c < ki; ++c) {
      const double h = std::max(1e-6, 1e-6 * std::abs(u[i][c]));
      up[i][c] = u[i][c] + h;
      const Vector fp = field(x, up);
      up[i][c] = u[i][c] - h;
      const Vector fm = field(x, up);
      up[i][c] = u[i][c];
      J.col(c) = (fp - fm) / (2.0 * h);
    }
    return J;
  }

 private:
  std::size_t state_dim_;
  double horizon_;
  std::size_t steps_;
  Vector x0_;
  std::vector<std::size_t> control_dims_;
  Dynamics dynamics_;
  std::vector<TerminalCost> terminal_costs_;
};

/// Piecewise-constant controls: controls[i] is N x k_i, row k holding player
/// i's control on interval k.
struct ControlProfile {
  std::vector<Matrix> controls;

  static ControlProfile zeros(const OpenLoopGame& g) {
    ControlProfile p;
    for (std::size_t i = 0; i < g.num_players(); ++i)
      p.controls.push_back(Matrix::Zero(static_cast<Eigen::Index>(g.steps()),
                                        static_cast<Eigen::Index>(g.control_dim(i))));
    return p;
  }

  /// Player i's control held at values[i] over the whole horizon.
  static ControlProfile constant(const OpenLoopGame& g, const std::vector<Vector>& values) {
    if (values.size() != g.num_players()) throw InputError("expected one control value per player");
    ControlProfile p = zeros(g);
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      if (static_cast<std::size_t>(values[i].size()) != g.control_dim(i))
        throw InputError("control value of player " + std::to_string(i + 1) + " has the wrong length");
      p.controls[i].rowwise() = values[i].transpose();
    }
    return p;
  }

  ControlSlice slice(std::size_t k) const {
    ControlSlice u;
    u.reserve(controls.size());
    for (const auto& c : controls) u.push_back(c.row(static_cast<Eigen::Index>(k)).transpose());
    return u;
  }

  /// Player-major, then interval, then component.
  Vector flatten() const {
    Eigen::Index n = 0;
    for (const auto& c : controls) n += c.size();
    Vector v(n);
    Eigen::Index off = 0;
    for (const auto& c : controls)
      for (Eigen::Index k = 0; k < c.rows(); ++k)
        for (Eigen::Index j = 0; j < c.cols(); ++j) v[off++] = c(k, j);
    return v;
  }

  static ControlProfile unflatten(const OpenLoopGame& g, const Vector& v) {
    ControlProfile p = zeros(g);
    if (static_cast<std::size_t>(v.size()) != g.total_controls())
      throw InputError("flattened profile has the wrong length");
    Eigen::Index off = 0;
    for (auto& c : p.controls)
      for (Eigen::Index k = 0; k < c.rows(); ++k)
        for (Eigen::Index j = 0; j < c.cols(); ++j) c(k, j) = v[off++];
    return p;
  }

  void check(const OpenLoopGame& g) const {
    if (controls.size() != g.num_players()) throw InputError("profile has the wrong number of players");
    for (std::size_t i = 0; i < controls.size(); ++i) {
      if (static_cast<std::size_t>(controls[i].rows()) != g.steps() ||
          static_cast<std::size_t>(controls[i].cols()) != g.control_dim(i))
        throw InputError("profile of player " + std::to_string(i + 1) + " has the wrong shape");
      if (!controls[i].allFinite()) throw InputError("profile has non-finite entries");
    }
  }
};

struct StateTrajectory {
  std::vector<double> times;
  std::vector<Vector> states;

  const Vector& terminal() const { return states.back(); }
};

struct CostateTrajectory {
  std::size_t player = 0;
  /// Costate row vectors stored as columns, one per grid node.
  std::vector<Vector> costates;
};

namespace detail {

using OdeStepper = boost::numeric::odeint::runge_kutta4<Vector, double, Vector, double,
                                                        boost::numeric::odeint::vector_space_algebra>;

/// Cubic Hermite state on interval k, using h evaluated with the interval's
/// control at both end nodes.
struct IntervalInterpolant {
  double t0, h;
  Vector x0, x1, f0, f1;

  Vector at(double t) const {
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * x0 + (s3 - 2 * s2 + s) * h * f0 + (-2 * s3 + 3 * s2) * x1 +
           (s3 - s2) * h * f1;
  }
};

inline IntervalInterpolant interval_interpolant(const OpenLoopGame& g, const StateTrajectory& st,
                                                const ControlSlice& u, std::size_t k) {
  return {g.time(k), g.dt(), st.states[k], st.states[k + 1], g.field(st.states[k], u),
          g.field(st.states[k + 1], u)};
}

}  // namespace detail

/// RK4 on the uniform grid with the control held constant on each interval.
inline StateTrajectory simulate_state(const OpenLoopGame& g, const ControlProfile& profile) {
  profile.check(g);
  StateTrajectory st;
  st.times.reserve(g.steps() + 1);
  st.states.reserve(g.steps() + 1);
  Vector x = g.x0();
  st.times.push_back(0.0);
  st.states.push_back(x);
  detail::OdeStepper stepper;
  for (std::size_t k = 0; k < g.steps(); ++k) {
    const ControlSlice u = profile.slice(k);
    auto sys = [&](const Vector& s, Vector& ds, double) { ds = g.field(s, u); };
    stepper.do_step(sys, x, g.time(k), g.dt());
    if (!x.allFinite())
      throw NumericalError("state became non-finite on interval " + std::to_string(k));
    st.times.push_back(g.time(k + 1));
    st.states.push_back(x);
  }
  return st;
}

/// Backward RK4 for p_i' = -p_i dh/dx from p_i(T) = D fhat_i(x(T)). States at
/// RK4 stage points come from the cubic Hermite interpolant of each interval.
inline CostateTrajectory simulate_costate(const OpenLoopGame& g, std::size_t i,
                                          const StateTrajectory& st, const ControlProfile& profile) {
  profile.check(g);
  if (i >= g.num_players()) throw InputError("player index out of range");
  if (st.states.size() != g.steps() + 1) throw InputError("state trajectory does not match the grid");
  CostateTrajectory ct;
  ct.player = i;
  ct.costates.assign(g.steps() + 1, Vector());
  Vector p = g.terminal_cost(i).gradient(st.terminal());
  if (static_cast<std::size_t>(p.size()) != g.state_dim() || !p.allFinite())
    throw NumericalError("terminal cost gradient is invalid");
  ct.costates[g.steps()] = p;
  detail::OdeStepper stepper;
  for (std::size_t k = g.steps(); k-- > 0;) {
    const ControlSlice u = profile.slice(k);
    const auto interp = detail::interval_interpolant(g, st, u, k);
    auto sys = [&](const Vector& q, Vector& dq, double t) {
      dq = -g.state_jacobian(interp.at(t), u).transpose() * q;
    };
    stepper.do_step(sys, p, g.time(k + 1), -g.dt());
    if (!p.allFinite())
      throw NumericalError("costate of player " + std::to_string(i + 1) +
                           " became non-finite on interval " + std::to_string(k));
    ct.costates[k] = p;
  }
  return ct;
}

namespace detail {

inline Matrix gradient_from(const OpenLoopGame& g, std::size_t i, const StateTrajectory& st,
                            const CostateTrajectory& ct, const ControlProfile& profile) {
  const auto N = static_cast<Eigen::Index>(g.steps());
  Matrix grad(N, static_cast<Eigen::Index>(g.control_dim(i)));
  const double h = g.dt();
  for (std::size_t k = 0; k < g.steps(); ++k) {
    const ControlSlice u = profile.slice(k);
    const auto interp = interval_interpolant(g, st, u, k);
    const double tmid = g.time(k) + 0.5 * h;
    const Vector xmid = interp.at(tmid);
    // Hermite midpoint of the costate, whose slope is -J^T p on the interval.
    const Vector& p0 = ct.costates[k];
    const Vector& p1 = ct.costates[k + 1];
    const Vector dp0 = -g.state_jacobian(st.states[k], u).transpose() * p0;
    const Vector dp1 = -g.state_jacobian(st.states[k + 1], u).transpose() * p1;
    const Vector pmid = 0.5 * (p0 + p1) + 0.125 * h * (dp0 - dp1);
    grad.row(static_cast<Eigen::Index>(k)) =
        (g.control_jacobian(xmid, u, i).transpose() * pmid).transpose();
  }
  if (!grad.allFinite())
    throw NumericalError("control gradient of player " + std::to_string(i + 1) + " is non-finite");
  return grad;
}

}  // namespace detail

/// Player i's per-interval gradient, N x k_i.
inline Matrix control_gradient(const OpenLoopGame& g, std::size_t i, const ControlProfile& profile) {
  const StateTrajectory st = simulate_state(g, profile);
  const CostateTrajectory ct = simulate_costate(g, i, st, profile);
  return detail::gradient_from(g, i, st, ct, profile);
}

/// Every player's control gradient; one forward solve shared by all players.
inline std::vector<Matrix> ol_game_form(const OpenLoopGame& g, const ControlProfile& profile) {
  const StateTrajectory st = simulate_state(g, profile);
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < g.num_players(); ++i)
    blocks.push_back(detail::gradient_from(g, i, st, simulate_costate(g, i, st, profile), profile));
  return blocks;
}

inline Vector flatten_blocks(const std::vector<Matrix>& blocks) {
  return ControlProfile{blocks}.flatten();
}

/// fhat_i(x(T)) of the simulated rollout.
inline double rolled_out_cost(const OpenLoopGame& g, std::size_t i, const ControlProfile& profile) {
  return g.terminal_cost(i).value(simulate_state(g, profile).terminal());
}

struct OlPlayOptions {
  double alpha = 0.1;
  std::size_t max_iters = 1000;
  /// Converged once the sup-norm of the game form is <= tol.
  double tol = 1e-10;
  /// Diverged once the sup-norm exceeds this bound.
  double divergence_bound = 1e12;
};

enum class OlPlayStatus { converged, max_iters, diverged };

inline const char* to_string(OlPlayStatus s) {
  switch (s) {
    case OlPlayStatus::converged: return "converged";
    case OlPlayStatus::max_iters: return "max_iters";
    case OlPlayStatus::diverged: return "diverged";
  }
  return "?";
}

struct OlPlayResult {
  ControlProfile profile;
  /// Game-form sup-norm at each iterate, starting with the initial profile.
  std::vector<double> sup_norms;
  OlPlayStatus status = OlPlayStatus::max_iters;
  std::size_t iterations = 0;
};

/// Simultaneous explicit gradient steps u_i <- u_i - alpha g_i.
inline OlPlayResult ol_gradient_play(const OpenLoopGame& g, const ControlProfile& start,
                                     const OlPlayOptions& opt = {}) {
  if (!(opt.alpha > 0)) throw InputError("gradient play step size must be positive");
  start.check(g);
  OlPlayResult r;
  r.profile = start;
  while (true) {
    const std::vector<Matrix> grad = ol_game_form(g, r.profile);
    double sup = 0.0;
    for (const auto& b : grad) sup = std::max(sup, b.lpNorm<Eigen::Infinity>());
    r.sup_norms.push_back(sup);
    if (sup <= opt.tol) {
      r.status = OlPlayStatus::converged;
      return r;
    }
    if (sup > opt.divergence_bound) {
      r.status = OlPlayStatus::diverged;
      return r;
    }
    if (r.iterations >= opt.max_iters) {
      r.status = OlPlayStatus::max_iters;
      return r;
    }
    for (std::size_t i = 0; i < g.num_players(); ++i) r.profile.controls[i] -= opt.alpha * grad[i];
    for (const auto& c : r.profile.controls)
      if (!c.allFinite())
        throw NumericalError("gradient play iterate " + std::to_string(r.iterations + 1) +
                             " is non-finite");
    ++r.iterations;
  }
}

struct OlClassifyOptions {
  double fd_step = 1e-4;
  std::size_t max_dimension = 400;
  /// Refuse profiles whose game-form sup-norm exceeds this.
  double near_critical_bound = 1e-3;
  Tolerances tolerances;
};

/// Central differences of the stacked game form over all N * sum k_i control
/// entries give the discretized d omega; its diagonal blocks are the player
/// Hessians. The finite-dimensional decision table then applies.
inline EquilibriumReport ol_classify(const OpenLoopGame& g, const ControlProfile& profile,
                                     const OlClassifyOptions& opt = {}) {
  profile.check(g);
  const std::size_t D = g.total_controls();
  if (D > opt.max_dimension)
    throw DimensionError("discretized strategy space has dimension " + std::to_string(D) +
                         " > cap " + std::to_string(opt.max_dimension));
  if (!(opt.fd_step > 0)) throw InputError("fd step must be positive");
  const Vector u = profile.flatten();
  const Vector omega = flatten_blocks(ol_game_form(g, profile));
  if (omega.lpNorm<Eigen::Infinity>() > opt.near_critical_bound)
    throw PreconditionError("profile is not near-critical: game-form sup-norm " +
                            std::to_string(omega.lpNorm<Eigen::Infinity>()));
  const auto n = static_cast<Eigen::Index>(D);
  Matrix J(n, n);
  Vector x = u;
  for (Eigen::Index c = 0; c < n; ++c) {
    x[c] = u[c] + opt.fd_step;
    const double up = x[c];
    const Vector gp = flatten_blocks(ol_game_form(g, ControlProfile::unflatten(g, x)));
    x[c] = u[c] - opt.fd_step;
    const double dn = x[c];
    const Vector gm = flatten_blocks(ol_game_form(g, ControlProfile::unflatten(g, x)));
    x[c] = u[c];
    J.col(c) = (gp - gm) / (up - dn);
  }
  std::vector<Matrix> hessians;
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const auto len = static_cast<Eigen::Index>(g.steps() * g.control_dim(i));
    hessians.push_back(J.block(off, off, len, len));
    off += len;
  }
  return classify_from_derivatives(u, omega, hessians, J, opt.tolerances, "fd");
}

// ---------------------------------------------------------------------------
// Builders

/// x' = A x + sum_i B_i u_i.
inline Dynamics linear_dynamics(Matrix A, std::vector<Matrix> B) {
  if (A.rows() != A.cols()) throw InputError("A must be square");
  for (std::size_t i = 0; i < B.size(); ++i)
    if (B[i].rows() != A.rows())
      throw InputError("B_" + std::to_string(i + 1) + " must have state_dim rows");
  auto a = std::make_shared<const Matrix>(std::move(A));
  auto b = std::make_shared<const std::vector<Matrix>>(std::move(B));
  Dynamics d;
  d.field = [a, b](const Vector& x, const ControlSlice& u) -> Vector {
    Vector dx = (*a) * x;
    for (std::size_t i = 0; i < b->size(); ++i) dx += (*b)[i] * u[i];
    return dx;
  };
  d.state_jacobian = [a](const Vector&, const ControlSlice&) { return *a; };
  d.control_jacobian = [b](const Vector&, const ControlSlice&, std::size_t i) { return (*b)[i]; };
  return d;
}

/// Each state component is a polynomial in (x, u_1, ..., u_n) concatenated.
inline Dynamics polynomial_dynamics(std::size_t state_dim, const std::vector<std::size_t>& control_dims,
                                    std::vector<Polynomial> components) {
  std::size_t vars = state_dim;
  for (auto k : control_dims) vars += k;
  if (components.size() != state_dim) throw InputError("need one polynomial per state component");
  for (const auto& p : components)
    if (p.num_vars() != vars)
      throw InputError("dynamics polynomial must take " + std::to_string(vars) + " variables");
  struct Model {
    std::vector<Polynomial> comps;
    std::vector<PolynomialDerivatives> derivs;
    std::vector<std::size_t> offsets;
    std::size_t d;
    std::vector<std::size_t> kdims;
    Vector pack(const Vector& x, const ControlSlice& u) const {
      Vector z(static_cast<Eigen::Index>(offsets.back()));
      z.head(static_cast<Eigen::Index>(d)) = x;
      for (std::size_t i = 0; i < u.size(); ++i)
        z.segment(static_cast<Eigen::Index>(offsets[i]), static_cast<Eigen::Index>(kdims[i])) = u[i];
      return z;
    }
    Matrix jacobian(const Vector& z) const {
      Matrix J(static_cast<Eigen::Index>(d), z.size());
      for (std::size_t r = 0; r < d; ++r) J.row(static_cast<Eigen::Index>(r)) = derivs[r].gradient(z).transpose();
      return J;
    }
  };
  auto model = std::make_shared<Model>();
  model->d = state_dim;
  model->kdims = control_dims;
  std::size_t off = state_dim;
  for (auto k : control_dims) {
    model->offsets.push_back(off);
    off += k;
  }
  model->offsets.push_back(off);
  for (auto& p : components) model->derivs.emplace_back(p);
  model->comps = std::move(components);
  Dynamics dyn;
  dyn.field = [model](const Vector& x, const ControlSlice& u) {
    const Vector z = model->pack(x, u);
    Vector dx(static_cast<Eigen::Index>(model->d));
    for (std::size_t r = 0; r < model->d; ++r) dx[static_cast<Eigen::Index>(r)] = model->comps[r](z);
    return dx;
  };
  dyn.state_jacobian = [model](const Vector& x, const ControlSlice& u) -> Matrix {
    return model->jacobian(model->pack(x, u)).leftCols(static_cast<Eigen::Index>(model->d));
  };
  dyn.control_jacobian = [model](const Vector& x, const ControlSlice& u, std::size_t i) -> Matrix {
    return model->jacobian(model->pack(x, u))
        .middleCols(static_cast<Eigen::Index>(model->offsets[i]), static_cast<Eigen::Index>(model->kdims[i]));
  };
  return dyn;
}

/// fhat(x) = 1/2 (x - target)^T Q (x - target), Q symmetrized.
inline TerminalCost quadratic_terminal_cost(const Matrix& Q, const Vector& target) {
  if (Q.rows() != Q.cols() || Q.rows() != target.size())
    throw InputError("terminal cost: Q must be square and match the target");
  auto q = std::make_shared<const Matrix>(0.5 * (Q + Q.transpose()));
  auto th = std::make_shared<const Vector>(target);
  return {[q, th](const Vector& x) {
            const Vector e = x - *th;
            return 0.5 * e.dot((*q) * e);
          },
          [q, th](const Vector& x) -> Vector { return (*q) * (x - *th); }};
}

/// Adds one state per player integrating (rho/2)|u_i|^2 and adds that state to
/// the player's terminal cost, so f_i gains the running cost
/// (rho/2) * integral |u_i|^2 dt.
inline OpenLoopGame augment_control_penalty(const OpenLoopGame& g, double rho) {
  if (!(rho >= 0) || !std::isfinite(rho)) throw InputError("control penalty must be non-negative");
  const std::size_t d = g.state_dim();
  const std::size_t n = g.num_players();
  const auto D = static_cast<Eigen::Index>(d);
  auto base = std::make_shared<const OpenLoopGame>(g);
  Dynamics dyn;
  dyn.field = [base, D, n, rho](const Vector& x, const ControlSlice& u) {
    Vector dx(D + static_cast<Eigen::Index>(n));
    dx.head(D) = base->field(x.head(D), u);
    for (std::size_t i = 0; i < n; ++i) dx[D + static_cast<Eigen::Index>(i)] = 0.5 * rho * u[i].squaredNorm();
    return dx;
  };
  dyn.state_jacobian = [base, D, n](const Vector& x, const ControlSlice& u) {
    const auto E = D + static_cast<Eigen::Index>(n);
    Matrix J = Matrix::Zero(E, E);
    J.topLeftCorner(D, D) = base->state_jacobian(x.head(D), u);
    return J;
  };
  dyn.control_jacobian = [base, D, n, rho](const Vector& x, const ControlSlice& u, std::size_t i) {
    const auto ki = u[i].size();
    Matrix J = Matrix::Zero(D + static_cast<Eigen::Index>(n), ki);
    J.topRows(D) = base->control_jacobian(x.head(D), u, i);
    J.row(D + static_cast<Eigen::Index>(i)) = rho * u[i].transpose();
    return J;
  };
  std::vector<TerminalCost> costs;
  for (std::size_t i = 0; i < n; ++i) {
    const TerminalCost c = g.terminal_cost(i);
    const auto zi = D + static_cast<Eigen::Index>(i);
    costs.push_back({[c, D, zi](const Vector& x) { return c.value(x.head(D)) + x[zi]; },
                     [c, D, zi](const Vector& x) -> Vector {
                       Vector gr = Vector::Zero(x.size());
                       gr.head(D) = c.gradient(x.head(D));
                       gr[zi] = 1.0;
                       return gr;
                     }});
  }
  Vector x0 = Vector::Zero(D + static_cast<Eigen::Index>(n));
  x0.head(D) = g.x0();
  return OpenLoopGame(d + n, g.horizon(), g.steps(), x0, g.control_dims(), std::move(dyn),
                      std::move(costs));
}

}  // namespace nashlocal
