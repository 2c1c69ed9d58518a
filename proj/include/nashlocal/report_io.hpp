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

// JSON and CSV forms of reports, trajectories and continuation paths.
// Numbers are written with %.17g so outputs round-trip and compare byte-wise.

#pragma once

#include "nashlocal/classify.hpp"
#include "nashlocal/config.hpp"
#include "nashlocal/continuation.hpp"
#include "nashlocal/flow.hpp"
#include "nashlocal/solve.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace nashlocal {

inline constexpr const char* kVersion = "0.1.0";

namespace io {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

inline Json to_json(const Tolerances& t) {
  return Json{{"critical", t.critical}, {"eigen", t.eigen}, {"singular", t.singular}};
}

inline Json to_json(const EquilibriumReport& r) {
  Json eig = Json::array();
  for (const auto& z : r.jacobian_eigenvalues) eig.push_back(Json::array({z.real(), z.imag()}));
  Json j;
  j["point"] = to_json(r.point);
  j["omega"] = to_json(r.omega);
  j["omega_norm"] = r.omega_norm;
  j["hessian_spectra"] = r.hessian_spectra;
  j["jacobian_singular_values"] = r.jacobian_singular_values;
  j["jacobian_eigenvalues"] = eig;
  j["sigma_min_relative"] = r.relative_sigma_min();
  j["jacobian_degenerate"] = r.jacobian_degenerate();
  j["verdict"] = r.classification.describe();
  j["code"] = r.classification.code();
  j["differential_nash"] = r.classification.is_differential_nash();
  if (r.classification.is_differential_nash()) {
    j["degenerate"] = r.classification.degenerate;
    j["flow_stable"] = to_string(r.classification.flow);
  }
  j["tolerances"] = to_json(r.tolerances);
  j["method"] = r.method;
  return j;
}

inline std::string point_columns(std::size_t m) {
  std::string s;
  for (std::size_t k = 0; k < m; ++k) s += (k ? ",u" : "u") + std::to_string(k + 1);
  return s;
}

inline std::string point_cells(const Vector& u) {
  std::string s;
  for (Eigen::Index k = 0; k < u.size(); ++k) s += (k ? "," : "") + num(u[k]);
  return s;
}

/// u1..um,omega_norm,min_eig_1..min_eig_n,sigma_min,code
inline std::string report_csv_header(std::size_t m, std::size_t players) {
  std::string s = point_columns(m) + ",omega_norm";
  for (std::size_t i = 0; i < players; ++i) s += ",min_eig_" + std::to_string(i + 1);
  return s + ",sigma_min,code\n";
}

inline std::string report_csv_row(const EquilibriumReport& r) {
  std::string s = point_cells(r.point) + "," + num(r.omega_norm);
  for (std::size_t i = 0; i < r.hessian_spectra.size(); ++i) s += "," + num(r.min_hessian_eigenvalue(i));
  const double smin = r.jacobian_singular_values.empty() ? 0.0 : r.jacobian_singular_values.back();
  return s + "," + num(smin) + "," + r.classification.code() + "\n";
}

/// t,u1..um,omega_norm
inline std::string trajectory_csv(const FlowTrajectory& traj) {
  std::ostringstream out;
  const auto m = traj.points.empty() ? 0 : static_cast<std::size_t>(traj.points.front().size());
  out << "t," << point_columns(m) << ",omega_norm\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    out << num(traj.times[k]) << "," << point_cells(traj.points[k]) << "," << num(traj.omega_norms[k])
        << "\n";
  return out.str();
}

/// s,u1..um,sigma_min,code
inline std::string path_csv(const ContinuationPath& path) {
  std::ostringstream out;
  const auto m = path.points.empty() ? 0 : static_cast<std::size_t>(path.points.front().size());
  out << "s," << point_columns(m) << ",sigma_min,code\n";
  for (std::size_t k = 0; k < path.s_values.size(); ++k) {
    const auto& sv = path.reports[k].jacobian_singular_values;
    out << num(path.s_values[k]) << "," << point_cells(path.points[k]) << ","
        << num(sv.empty() ? 0.0 : sv.back()) << "," << path.reports[k].classification.code() << "\n";
  }
  return out.str();
}

/// x1..xm,hits,omega_norm,code per root.
inline std::string roots_csv(const MultiStartResult& r, std::size_t m) {
  std::ostringstream out;
  out << point_columns(m) << ",hits,omega_norm,sigma_min,code\n";
  for (const auto& root : r.roots) {
    const auto& sv = root.report.jacobian_singular_values;
    out << point_cells(root.point) << "," << root.hits << "," << num(root.report.omega_norm) << ","
        << num(sv.empty() ? 0.0 : sv.back()) << "," << root.report.classification.code() << "\n";
  }
  return out.str();
}

inline Json manifest(const std::string& command, const std::string& config_path, const Json& options,
                     std::optional<std::uint64_t> seed, const Tolerances& tol) {
  Json j;
  j["command"] = command;
  j["config"] = config_path;
  j["options"] = options;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["version"] = kVersion;
  j["tolerances"] = to_json(tol);
  return j;
}

}  // namespace io
}  // namespace nashlocal
