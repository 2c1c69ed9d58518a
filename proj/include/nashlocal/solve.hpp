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

// Newton iteration on omega(u) = 0 with d omega as the Jacobian, and
// multi-start root search over a box.

#pragma once

#include "nashlocal/calculus.hpp"
#include "nashlocal/classify.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/game.hpp"
#include "nashlocal/spectral.hpp"

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace nashlocal {

struct NewtonOptions {
  int max_iters = 50;
  double residual_tol = 1e-10;
  double damping = 0.5;
  int max_halvings = 20;
  /// sigma_min / sigma_max below which the linear solve is refused.
  double singular_tol = 1e-12;
  std::optional<DerivMethod> method;
  Tolerances classify_tolerances;

  void validate() const {
    if (max_iters < 1 || !(residual_tol > 0) || !(damping > 0 && damping < 1) ||
        max_halvings < 0 || !(singular_tol > 0))
      throw InputError("invalid Newton options");
  }
};

enum class NewtonStatus { converged, singular_jacobian, max_iters, non_finite };

inline const char* to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::singular_jacobian: return "singular_jacobian";
    case NewtonStatus::max_iters: return "max_iters";
    case NewtonStatus::non_finite: return "non_finite";
  }
  return "?";
}

struct NewtonResult {
  NewtonStatus status = NewtonStatus::max_iters;
  Vector point;
  int iterations = 0;
  /// ||omega||_inf at every iterate, starting with u0.
  std::vector<double> residuals;
  std::optional<EquilibriumReport> report;

  bool converged() const { return status == NewtonStatus::converged; }
};

inline NewtonResult newton_solve(const Game& game, const Vector& u0, const NewtonOptions& opt = {}) {
  opt.validate();
  game.check_strategy(u0);
  const DerivMethod dm = opt.method.value_or(preferred_method(game));
  auto residual = [&](const Vector& u) { return game_form(game, u, dm).stacked; };

  NewtonResult res;
  res.point = u0;
  Vector w = residual(u0);
  double r = w.lpNorm<Eigen::Infinity>();
  res.residuals.push_back(r);
  while (true) {
    if (r <= opt.residual_tol) {
      res.status = NewtonStatus::converged;
      res.report = classify_point(game, res.point, opt.classify_tolerances, dm);
      return res;
    }
    if (res.iterations >= opt.max_iters) {
      res.status = NewtonStatus::max_iters;
      return res;
    }
    const Matrix J = game_jacobian(game, res.point, dm).matrix;
    Eigen::JacobiSVD<Matrix> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    if (sv[0] == 0.0 || sv[sv.size() - 1] < opt.singular_tol * sv[0]) {
      res.status = NewtonStatus::singular_jacobian;
      return res;
    }
    const Vector step = svd.solve(-w);

    // Backtracking: take the first step length whose residual decreases; if
    // none does, keep the shortest one tried.
    double alpha = 1.0;
    Vector trial;
    Vector trial_w;
    double trial_r = 0.0;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      trial = res.point + alpha * step;
      if (!trial.allFinite()) {
        res.status = NewtonStatus::non_finite;
        return res;
      }
      trial_w = residual(trial);
      trial_r = trial_w.lpNorm<Eigen::Infinity>();
      if (trial_r < r) break;
      alpha *= opt.damping;
    }
    if (!std::isfinite(trial_r)) {
      res.status = NewtonStatus::non_finite;
      return res;
    }
    res.point = std::move(trial);
    w = std::move(trial_w);
    r = trial_r;
    ++res.iterations;
    res.residuals.push_back(r);
  }
}

/// Axis-aligned box, one closed interval per coordinate.
struct Box {
  std::vector<std::pair<double, double>> intervals;

  static Box uniform(std::size_t dim, double lo, double hi) {
    return Box{std::vector<std::pair<double, double>>(dim, {lo, hi})};
  }
  std::size_t dim() const { return intervals.size(); }
};

struct Root {
  Vector point;
  EquilibriumReport report;
  /// Number of starts that converged to this root.
  std::size_t hits = 0;
};

struct MultiStartResult {
  std::vector<Root> roots;
  std::map<NewtonStatus, std::size_t> failures;
  std::size_t starts = 0;

  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const auto& [status, count] : failures) n += count;
    return n;
  }
};

/// The first k points of a scrambled Sobol sequence in the box. The seed
/// selects a Cranley-Patterson rotation, so the set is deterministic per seed.
inline std::vector<Vector> low_discrepancy_points(const Box& box, std::size_t k, std::uint64_t seed) {
  const std::size_t d = box.dim();
  if (d == 0) throw InputError("box has no coordinates");
  for (const auto& [lo, hi] : box.intervals)
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw InputError("box must be finite with lo <= hi");
  boost::random::sobol engine(static_cast<unsigned>(d));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(d);
  for (auto& s : shift) s = unit(rng);
  const double scale = std::ldexp(1.0, -64);
  std::vector<Vector> pts;
  pts.reserve(k);
  for (std::size_t n = 0; n < k; ++n) {
    Vector p(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a) {
      double t = static_cast<double>(engine()) * scale + shift[a];
      t -= std::floor(t);
      const auto [lo, hi] = box.intervals[a];
      p[static_cast<Eigen::Index>(a)] = lo + t * (hi - lo);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

/// Newton from k low-discrepancy starts. Converged points closer than
/// `dedup_radius` are merged (first start wins); roots are sorted by
/// omega norm, then lexicographically.
inline MultiStartResult multi_start(const Game& game, const Box& box, std::size_t k,
                                    std::uint64_t seed, const NewtonOptions& opt = {},
                                    double dedup_radius = 1e-6) {
  if (k < 1) throw InputError("multi-start needs at least one sample");
  if (box.dim() != game.total_dim())
    throw InputError("box dimension " + std::to_string(box.dim()) + " does not match game dimension " +
                     std::to_string(game.total_dim()));
  MultiStartResult out;
  out.starts = k;
  for (const Vector& u0 : low_discrepancy_points(box, k, seed)) {
    NewtonResult r = newton_solve(game, u0, opt);
    if (!r.converged()) {
      ++out.failures[r.status];
      continue;
    }
    auto same = std::find_if(out.roots.begin(), out.roots.end(), [&](const Root& root) {
      return (root.point - r.point).norm() < dedup_radius;
    });
    if (same != out.roots.end()) {
      ++same->hits;
    } else {
      out.roots.push_back(Root{r.point, std::move(*r.report), 1});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
    if (a.report.omega_norm != b.report.omega_norm) return a.report.omega_norm < b.report.omega_norm;
    return std::lexicographical_compare(a.point.begin(), a.point.end(), b.point.begin(), b.point.end());
  });
  return out;
}

}  // namespace nashlocal
