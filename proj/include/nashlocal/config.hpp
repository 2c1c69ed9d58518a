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

// JSON game configuration.
//
//   {
//     "players": 2,
//     "dims": [1, 1],
//     "costs": [
//       {"polynomial": [[0.5, [2, 0]], [-1.0, [1, 1]]]},
//       {"quadratic": {"A": [[0, -1], [-1, 1]], "b": [0, 0], "c": 0}}
//     ]
//   }
//
// A single {"builtin": name, "params": {...}} entry in `costs` stands for the
// whole game; `players` and `dims` may then be omitted.

#pragma once

#include "nashlocal/cost.hpp"
#include "nashlocal/errors.hpp"
#include "nashlocal/game.hpp"
#include "nashlocal/polynomial.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nashlocal {

using Json = nlohmann::json;

namespace config {

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

inline double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(where + ": number is not finite");
  return v;
}

inline std::size_t positive_integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw InputError(where + ": expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

inline Vector vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k)
    v[static_cast<Eigen::Index>(k)] = number(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

/// Row-major matrix; every row must have the same length.
inline Matrix matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw InputError(where + "[0]: expected an array");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError(rw + ": expected a row of length " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          number(j[r][c], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

/// [[coeff, [e_1, ..., e_m]], ...]
inline Polynomial polynomial(const Json& j, std::size_t num_vars, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of [coeff, exponents]");
  Polynomial p(num_vars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tw = where + "[" + std::to_string(t) + "]";
    const Json& term = j[t];
    if (!term.is_array() || term.size() != 2 || !term[1].is_array())
      throw InputError(tw + ": expected [coeff, [exponents]]");
    const double coeff = number(term[0], tw + "[0]");
    if (term[1].size() != num_vars)
      throw InputError(tw + ": exponent tuple has length " + std::to_string(term[1].size()) +
                       ", expected " + std::to_string(num_vars));
    std::vector<unsigned> exps;
    for (std::size_t v = 0; v < num_vars; ++v) {
      const Json& e = term[1][v];
      if (!e.is_number_integer() || e.get<long long>() < 0)
        throw InputError(tw + ": exponents must be non-negative integers");
      exps.push_back(static_cast<unsigned>(e.get<long long>()));
    }
    p.add_term(coeff, std::move(exps));
  }
  return p;
}

inline QuadraticForm quadratic(const Json& j, std::size_t num_vars, const std::string& where) {
  const Matrix A = matrix(require(j, "A", where), where + ".A");
  if (static_cast<std::size_t>(A.rows()) != num_vars || static_cast<std::size_t>(A.cols()) != num_vars)
    throw InputError(where + ".A: expected a " + std::to_string(num_vars) + "x" +
                     std::to_string(num_vars) + " matrix");
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = r + 1; c < A.cols(); ++c)
      if (A(r, c) != A(c, r))
        throw InputError(where + ".A: not symmetric at entry [" + std::to_string(r) + "][" +
                         std::to_string(c) + "]");
  Vector b = Vector::Zero(static_cast<Eigen::Index>(num_vars));
  if (j.contains("b")) {
    b = vector(j.at("b"), where + ".b");
    if (static_cast<std::size_t>(b.size()) != num_vars)
      throw InputError(where + ".b: expected length " + std::to_string(num_vars));
  }
  const double c = j.contains("c") ? number(j.at("c"), where + ".c") : 0.0;
  return QuadraticForm(A, b, c);
}

inline std::map<std::string, double> params(const Json& j, const std::string& where) {
  std::map<std::string, double> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) out[key] = number(value, where + "." + key);
  return out;
}

/// One cost entry that is a polynomial or a quadratic over `num_vars` variables.
inline Cost cost_entry(const Json& entry, std::size_t num_vars, const std::string& where) {
  if (entry.contains("polynomial"))
    return Cost::polynomial(polynomial(entry.at("polynomial"), num_vars, where + ".polynomial"));
  if (entry.contains("quadratic"))
    return Cost::quadratic(quadratic(entry.at("quadratic"), num_vars, where + ".quadratic"));
  throw InputError(where + ": expected a 'polynomial' or 'quadratic' entry");
}

}  // namespace config

inline Game load_game_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("game config: expected a JSON object");
  const Json& costs = config::require(doc, "costs", "game config");
  if (!costs.is_array() || costs.empty()) throw InputError("costs: expected a non-empty array");

  if (costs.size() == 1 && costs[0].contains("builtin")) {
    const Json& name = costs[0].at("builtin");
    if (!name.is_string()) throw InputError("costs[0].builtin: expected a string");
    Game g = builtin::family(name.get<std::string>(),
                             config::params(costs[0].value("params", Json()), "costs[0].params"));
    if (doc.contains("players") &&
        config::positive_integer(doc.at("players"), "players") != g.num_players())
      throw InputError("players: builtin '" + name.get<std::string>() + "' has " +
                       std::to_string(g.num_players()) + " players");
    if (doc.contains("dims")) {
      const Json& dims = doc.at("dims");
      bool ok = dims.is_array() && dims.size() == g.num_players();
      for (std::size_t i = 0; ok && i < dims.size(); ++i)
        ok = dims[i].is_number_integer() && dims[i].get<long long>() == static_cast<long long>(g.dim(i));
      if (!ok) throw InputError("dims: does not match builtin '" + name.get<std::string>() + "'");
    }
    return g;
  }

  const std::size_t n = config::positive_integer(config::require(doc, "players", "game config"), "players");
  const Json& dims_json = config::require(doc, "dims", "game config");
  if (!dims_json.is_array() || dims_json.size() != n)
    throw InputError("dims: expected an array of " + std::to_string(n) + " positive integers");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < n; ++i)
    dims.push_back(config::positive_integer(dims_json[i], "dims[" + std::to_string(i) + "]"));
  std::size_t m = 0;
  for (auto d : dims) m += d;

  if (costs.size() != n)
    throw InputError("costs: expected " + std::to_string(n) + " entries, got " +
                     std::to_string(costs.size()));
  std::vector<Cost> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "costs[" + std::to_string(i) + "]";
    if (costs[i].contains("builtin"))
      throw InputError(where + ": a builtin must be the only cost entry");
    out.push_back(config::cost_entry(costs[i], m, where));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const Json& l = doc.at("labels");
    if (!l.is_array() || l.size() != n) throw InputError("labels: expected one name per player");
    for (const auto& s : l) {
      if (!s.is_string()) throw InputError("labels: expected strings");
      labels.push_back(s.get<std::string>());
    }
  }
  return Game(std::move(dims), std::move(out), std::move(labels));
}

inline Game load_game(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("game config: ") + e.what());
  }
  return load_game_json(doc);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Game load_game_file(const std::string& path) { return load_game(read_text_file(path)); }

}  // namespace nashlocal
