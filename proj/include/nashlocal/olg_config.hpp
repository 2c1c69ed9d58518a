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

// Open-loop game configuration and control-profile CSV.
//
//   {
//     "players": 2, "dims": [1, 1],
//     "state_dim": 1, "horizon": 1.0, "steps": 50, "x0": [0.0],
//     "dynamics": {"linear": {"A": [[-1]], "B": [[[1]], [[1]]]}},
//     "terminal_costs": [{"quadratic": {"Q": [[1]], "target": [1]}}, ...],
//     "control_penalty": 0.1
//   }
//
// `dynamics` may instead be {"builtin": "integrator"} (x' = sum_i u_i),
// {"builtin": "linear_decay"} (x' = -x + sum_i u_i), or
// {"polynomial": [p_1, ..., p_d]} with each p_r a polynomial over the
// concatenation (x, u_1, ..., u_n). `control_penalty` is optional.

#pragma once

#include "nashlocal/config.hpp"
#include "nashlocal/olgames.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace nashlocal {

namespace config {

inline Dynamics builtin_dynamics(const std::string& name, std::size_t d,
                                 const std::vector<std::size_t>& kdims) {
  for (std::size_t i = 0; i < kdims.size(); ++i)
    if (kdims[i] != d)
      throw InputError("dynamics builtin '" + name + "' needs every control dimension equal to state_dim");
  const auto D = static_cast<Eigen::Index>(d);
  std::vector<Matrix> B(kdims.size(), Matrix::Identity(D, D));
  if (name == "integrator") return linear_dynamics(Matrix::Zero(D, D), std::move(B));
  if (name == "linear_decay") return linear_dynamics(-Matrix::Identity(D, D), std::move(B));
  throw InputError("unknown dynamics builtin '" + name + "' (expected integrator|linear_decay)");
}

}  // namespace config

inline OpenLoopGame load_open_loop_game_json(const Json& doc) {
  using namespace config;
  if (!doc.is_object()) throw InputError("open-loop config: expected a JSON object");
  const std::string top = "open-loop config";
  const std::size_t d = positive_integer(require(doc, "state_dim", top), "state_dim");
  const double T = number(require(doc, "horizon", top), "horizon");
  const std::size_t N = positive_integer(require(doc, "steps", top), "steps");
  const Vector x0 = vector(require(doc, "x0", top), "x0");
  if (static_cast<std::size_t>(x0.size()) != d)
    throw InputError("x0: expected length " + std::to_string(d));

  const Json& dims_json = require(doc, "dims", top);
  if (!dims_json.is_array() || dims_json.empty())
    throw InputError("dims: expected a non-empty array of control dimensions");
  std::vector<std::size_t> kdims;
  for (std::size_t i = 0; i < dims_json.size(); ++i)
    kdims.push_back(positive_integer(dims_json[i], "dims[" + std::to_string(i) + "]"));
  const std::size_t n = kdims.size();
  if (doc.contains("players") && positive_integer(doc.at("players"), "players") != n)
    throw InputError("players: does not match the length of dims");

  const Json& dyn = require(doc, "dynamics", top);
  Dynamics dynamics;
  if (dyn.contains("linear")) {
    const Json& lin = dyn.at("linear");
    const Matrix A = matrix(require(lin, "A", "dynamics.linear"), "dynamics.linear.A");
    if (static_cast<std::size_t>(A.rows()) != d || A.cols() != A.rows())
      throw InputError("dynamics.linear.A: expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    const Json& Bj = require(lin, "B", "dynamics.linear");
    if (!Bj.is_array() || Bj.size() != n)
      throw InputError("dynamics.linear.B: expected one matrix per player");
    std::vector<Matrix> B;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string w = "dynamics.linear.B[" + std::to_string(i) + "]";
      Matrix Bi = matrix(Bj[i], w);
      if (static_cast<std::size_t>(Bi.rows()) != d || static_cast<std::size_t>(Bi.cols()) != kdims[i])
        throw InputError(w + ": expected a " + std::to_string(d) + "x" + std::to_string(kdims[i]) + " matrix");
      B.push_back(std::move(Bi));
    }
    dynamics = linear_dynamics(A, std::move(B));
  } else if (dyn.contains("builtin")) {
    if (!dyn.at("builtin").is_string()) throw InputError("dynamics.builtin: expected a string");
    dynamics = builtin_dynamics(dyn.at("builtin").get<std::string>(), d, kdims);
  } else if (dyn.contains("polynomial")) {
    const Json& comps = dyn.at("polynomial");
    if (!comps.is_array() || comps.size() != d)
      throw InputError("dynamics.polynomial: expected one polynomial per state component");
    std::size_t vars = d;
    for (auto k : kdims) vars += k;
    std::vector<Polynomial> ps;
    for (std::size_t r = 0; r < d; ++r)
      ps.push_back(polynomial(comps[r], vars, "dynamics.polynomial[" + std::to_string(r) + "]"));
    dynamics = polynomial_dynamics(d, kdims, std::move(ps));
  } else {
    throw InputError("dynamics: expected 'linear', 'builtin' or 'polynomial'");
  }

  const Json& tc = require(doc, "terminal_costs", top);
  if (!tc.is_array() || tc.size() != n)
    throw InputError("terminal_costs: expected one entry per player");
  std::vector<TerminalCost> costs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = "terminal_costs[" + std::to_string(i) + "]";
    const Json& q = require(tc[i], "quadratic", w);
    const Matrix Q = matrix(require(q, "Q", w + ".quadratic"), w + ".quadratic.Q");
    const Vector theta = vector(require(q, "target", w + ".quadratic"), w + ".quadratic.target");
    if (static_cast<std::size_t>(Q.rows()) != d || Q.cols() != Q.rows() ||
        static_cast<std::size_t>(theta.size()) != d)
      throw InputError(w + ": Q must be " + std::to_string(d) + "x" + std::to_string(d) +
                       " and target of length " + std::to_string(d));
    costs.push_back(quadratic_terminal_cost(Q, theta));
  }
  OpenLoopGame g(d, T, N, x0, std::move(kdims), std::move(dynamics), std::move(costs));
  if (doc.contains("control_penalty"))
    return augment_control_penalty(g, number(doc.at("control_penalty"), "control_penalty"));
  return g;
}

inline OpenLoopGame load_open_loop_game(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("open-loop config: ") + e.what());
  }
  return load_open_loop_game_json(doc);
}

inline OpenLoopGame load_open_loop_game_file(const std::string& path) {
  return load_open_loop_game(read_text_file(path));
}

/// Header `t,u1_1,...,u1_k1,u2_1,...`; one row per interval, t = interval start.
inline std::string profile_to_csv(const OpenLoopGame& g, const ControlProfile& p) {
  p.check(g);
  std::ostringstream out;
  out << "t";
  for (std::size_t i = 0; i < g.num_players(); ++i)
    for (std::size_t j = 0; j < g.control_dim(i); ++j) out << ",u" << i + 1 << "_" << j + 1;
  out << "\n";
  char buf[32];
  for (std::size_t k = 0; k < g.steps(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", g.time(k));
    out << buf;
    for (const auto& c : p.controls)
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", c(static_cast<Eigen::Index>(k), j));
        out << "," << buf;
      }
    out << "\n";
  }
  return out.str();
}

inline ControlProfile profile_from_csv(const OpenLoopGame& g, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("profile CSV is empty");
  std::size_t cols = 1;
  for (auto k : g.control_dims()) cols += k;
  ControlProfile p = ControlProfile::zeros(g);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (row >= g.steps()) throw InputError("profile CSV has more than " + std::to_string(g.steps()) + " rows");
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw InputError("profile CSV row " + std::to_string(row + 1) + ": bad number '" + cell + "'");
      }
    }
    if (vals.size() != cols)
      throw InputError("profile CSV row " + std::to_string(row + 1) + ": expected " +
                       std::to_string(cols) + " columns");
    std::size_t c = 1;
    for (auto& m : p.controls)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(static_cast<Eigen::Index>(row), j) = vals[c++];
    ++row;
  }
  if (row != g.steps())
    throw InputError("profile CSV has " + std::to_string(row) + " rows, expected " + std::to_string(g.steps()));
  p.check(g);
  return p;
}

}  // namespace nashlocal
