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

// The nashlocal command line. `run` takes the arguments after the program
// name and returns the process exit code:
//   0 success, 2 input error, 3 numerical failure, 4 dimension guard.

#pragma once

#include "nashlocal/nashlocal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nashlocal::cli {

enum ExitCode { kOk = 0, kInput = 2, kNumerical = 3, kDimension = 4 };

inline std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size() || !std::isfinite(x))
      throw InputError(what + ": bad number '" + cell + "' in '" + text + "'");
    v.push_back(x);
  }
  if (v.empty()) throw InputError(what + ": empty list");
  return v;
}

inline Vector parse_vector(const std::string& text, const std::string& what) {
  const auto v = parse_numbers(text, what);
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Points from a CSV file: one point per line, optional non-numeric header.
inline std::vector<Vector> read_points_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<Vector> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && !line.empty() && (std::isalpha(static_cast<unsigned char>(line[0])) != 0)) {
      first = false;
      continue;
    }
    first = false;
    pts.push_back(parse_vector(line, path));
  }
  return pts;
}

inline Box parse_box(const std::string& text, std::size_t dim) {
  const auto v = parse_numbers(text, "--box");
  if (v.size() == 2) return Box::uniform(dim, v[0], v[1]);
  if (v.size() != 2 * dim)
    throw InputError("--box: expected lo,hi or " + std::to_string(2 * dim) + " numbers");
  Box b;
  for (std::size_t k = 0; k < dim; ++k) b.intervals.emplace_back(v[2 * k], v[2 * k + 1]);
  return b;
}

/// "zero", "own" (zeta_i = sum of player i's coordinates), inline JSON, or a
/// JSON file. JSON is an array of cost entries or {"costs": [...]}.
inline std::vector<Cost> parse_zeta(const std::string& spec, const Game& game) {
  const std::size_t m = game.total_dim();
  std::vector<Cost> zeta;
  if (spec == "zero") {
    for (std::size_t i = 0; i < game.num_players(); ++i) zeta.push_back(Cost::polynomial(Polynomial(m)));
    return zeta;
  }
  if (spec == "own") {
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      Polynomial p(m);
      for (std::size_t a = 0; a < game.dim(i); ++a) {
        std::vector<unsigned> e(m, 0);
        e[game.offset(i) + a] = 1;
        p.add_term(1.0, std::move(e));
      }
      zeta.push_back(Cost::polynomial(std::move(p)));
    }
    return zeta;
  }
  const bool inline_json = !spec.empty() && (spec.front() == '[' || spec.front() == '{');
  Json doc;
  try {
    doc = Json::parse(inline_json ? spec : read_text_file(spec));
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("--zeta: ") + e.what());
  }
  const Json& arr = doc.is_object() ? config::require(doc, "costs", "--zeta") : doc;
  if (!arr.is_array() || arr.size() != game.num_players())
    throw InputError("--zeta: expected one cost entry per player");
  for (std::size_t i = 0; i < arr.size(); ++i)
    zeta.push_back(config::cost_entry(arr[i], m, "--zeta[" + std::to_string(i) + "]"));
  return zeta;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << content;
  if (!f) throw InputError("failed writing '" + path + "'");
}

/// Content goes to `out_path` with a sibling manifest, or to stdout.
inline void emit(const std::string& content, const std::string& out_path, const Json& manifest,
                 std::ostream& out) {
  if (out_path.empty()) {
    out << content;
    return;
  }
  write_file(out_path, content);
  write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

struct Common {
  std::string game;
  std::string deriv;
  std::string out;
  std::string format = "json";
  double tol_critical = 1e-8;
  double tol_eigen = 1e-8;
  double tol_singular = 1e-10;

  std::optional<DerivMethod> method() const {
    if (deriv.empty()) return std::nullopt;
    return parse_deriv_method(deriv);
  }
  Tolerances tolerances() const { return {tol_critical, tol_eigen, tol_singular}; }
};

inline void add_common(CLI::App* sub, Common& c, bool with_game = true) {
  if (with_game) sub->add_option("--game", c.game, "Game config (JSON)")->required();
  sub->add_option("--deriv", c.deriv, "Derivative method: analytic|dual|fd");
  sub->add_option("--out", c.out, "Output file; a .manifest.json is written beside it");
  sub->add_option("--tol-critical", c.tol_critical, "Stationarity tolerance on ||omega||_inf");
  sub->add_option("--tol-eigen", c.tol_eigen, "Eigenvalue sign band");
  sub->add_option("--tol-singular", c.tol_singular, "Relative singular-value threshold");
}

inline Json common_options(const Common& c) {
  return Json{{"deriv", c.deriv.empty() ? "auto" : c.deriv}, {"format", c.format}};
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local Nash equilibria of continuous games"};
  app.name("nashlocal");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // classify
  Common cc;
  std::vector<std::string> cpoints;
  std::string cpoints_file;
  auto* classify = app.add_subcommand("classify", "Classify joint strategies");
  add_common(classify, cc);
  classify->add_option("--point", cpoints, "Joint strategy, comma separated (repeatable)");
  classify->add_option("--points", cpoints_file, "CSV file of joint strategies");
  classify->add_option("--format", cc.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // solve
  Common sc;
  std::string box_text = "-10,10";
  std::size_t k = 64;
  std::uint64_t seed = 0;
  auto* solve = app.add_subcommand("solve", "Multi-start Newton search for equilibria");
  add_common(solve, sc);
  solve->add_option("--box", box_text, "lo,hi or lo1,hi1,...,lom,him");
  solve->add_option("--k", k, "Number of starts");
  solve->add_option("--seed", seed, "Seed of the start set");
  solve->add_option("--format", sc.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // flow
  Common fc;
  std::string fpoint;
  FlowOptions fopt;
  std::string integrator = "rk45";
  auto* flow = app.add_subcommand("flow", "Simulate gradient play");
  add_common(flow, fc);
  flow->add_option("--point", fpoint, "Initial joint strategy")->required();
  flow->add_option("--integrator", integrator, "rk4|rk45");
  flow->add_option("--dt", fopt.dt, "Fixed step (rk4) or initial step (rk45)");
  flow->add_option("--tmax", fopt.t_max, "Final time");
  flow->add_option("--stop-tol", fopt.stop_tol, "Stop when ||omega||_inf falls below this");
  flow->add_option("--norm-bound", fopt.norm_bound, "Divergence bound on ||u||_inf");

  // continue
  Common pc;
  std::string ppoint;
  std::string zeta_spec = "own";
  std::string s_range = "0,1";
  double ds = 0.1;
  auto* cont = app.add_subcommand("continue", "Track an equilibrium under cost perturbation");
  add_common(cont, pc);
  cont->add_option("--point", ppoint, "Initial equilibrium")->required();
  cont->add_option("--zeta", zeta_spec, "zero|own|JSON cost entries|JSON file");
  cont->add_option("--s-range", s_range, "s_min,s_max with s_min <= 0 <= s_max");
  cont->add_option("--ds", ds, "Parameter step");

  // olg
  auto* olg = app.add_subcommand("olg", "Open-loop differential games");
  olg->require_subcommand(1);
  Common oc;
  std::string profile_file;
  std::string constant;
  OlPlayOptions play_opt;
  OlClassifyOptions ocl_opt;
  auto add_olg = [&](const char* name, const char* help) {
    auto* s = olg->add_subcommand(name, help);
    s->add_option("--game", oc.game, "Open-loop game config (JSON)")->required();
    s->add_option("--profile", profile_file, "Control profile CSV (default: zeros)");
    s->add_option("--constant", constant, "Constant controls, all players concatenated");
    s->add_option("--out", oc.out, "Output file; a .manifest.json is written beside it");
    return s;
  };
  auto* olg_sim = add_olg("simulate", "State trajectory CSV: t,x1..xd");
  auto* olg_grad = add_olg("gradient", "Game form per interval CSV: t,g1_1,...");
  auto* olg_play = add_olg("play", "Open-loop gradient play; writes the final profile CSV");
  olg_play->add_option("--alpha", play_opt.alpha, "Step size");
  olg_play->add_option("--max-iters", play_opt.max_iters, "Iteration limit");
  olg_play->add_option("--tol", play_opt.tol, "Stop when the sup-norm falls below this");
  auto* olg_cls = add_olg("classify", "Classify the discretized profile");
  olg_cls->add_option("--fd-step", ocl_opt.fd_step, "Finite-difference step");
  olg_cls->add_option("--cap", ocl_opt.max_dimension, "Dimension cap");
  olg_cls->add_option("--near-critical", ocl_opt.near_critical_bound, "Game-form bound for the precondition");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }

  try {
    if (*classify) {
      const Game game = load_game_file(cc.game);
      std::vector<Vector> pts;
      for (const auto& p : cpoints) pts.push_back(parse_vector(p, "--point"));
      if (!cpoints_file.empty())
        for (auto& p : read_points_csv(cpoints_file)) pts.push_back(std::move(p));
      if (pts.empty()) throw InputError("classify: give --point or --points");
      std::vector<EquilibriumReport> reports;
      for (const auto& p : pts) {
        game.check_strategy(p);
        reports.push_back(classify_point(game, p, cc.tolerances(), cc.method()));
      }
      std::string content;
      if (cc.format == "csv") {
        content = io::report_csv_header(game.total_dim(), game.num_players());
        for (const auto& r : reports) content += io::report_csv_row(r);
      } else {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(io::to_json(r));
        content = arr.dump(2) + "\n";
      }
      Json opts = common_options(cc);
      opts["points"] = cpoints;
      opts["points_file"] = cpoints_file;
      emit(content, cc.out, io::manifest("classify", cc.game, opts, std::nullopt, cc.tolerances()), out);
      for (const auto& r : reports)
        err << detail::format_vector(r.point) << ": " << r.classification.describe() << "\n";
      return kOk;
    }

    if (*solve) {
      const Game game = load_game_file(sc.game);
      const Box box = parse_box(box_text, game.total_dim());
      NewtonOptions nopt;
      nopt.method = sc.method();
      nopt.classify_tolerances = sc.tolerances();
      const MultiStartResult res = multi_start(game, box, k, seed, nopt);
      std::string content;
      if (sc.format == "csv") {
        content = io::roots_csv(res, game.total_dim());
      } else {
        Json roots = Json::array();
        for (const auto& r : res.roots) {
          Json j = io::to_json(r.report);
          j["hits"] = r.hits;
          roots.push_back(j);
        }
        Json failures = Json::object();
        for (const auto& [status, count] : res.failures) failures[to_string(status)] = count;
        content = Json{{"starts", res.starts}, {"roots", roots}, {"failures", failures},
                       {"failure_count", res.failure_count()}}
                      .dump(2) +
                  "\n";
      }
      Json opts = common_options(sc);
      opts["box"] = box_text;
      opts["k"] = k;
      emit(content, sc.out, io::manifest("solve", sc.game, opts, seed, sc.tolerances()), out);
      err << res.roots.size() << " root(s), " << res.failure_count() << " failed start(s)\n";
      return kOk;
    }

    if (*flow) {
      const Game game = load_game_file(fc.game);
      fopt.integrator = parse_integrator(integrator);
      fopt.method = fc.method();
      const Vector u0 = parse_vector(fpoint, "--point");
      const FlowTrajectory traj = gradient_play(game, u0, fopt);
      Json opts = common_options(fc);
      opts.update(Json{{"point", fpoint}, {"integrator", integrator}, {"dt", fopt.dt},
                       {"tmax", fopt.t_max}, {"stop_tol", fopt.stop_tol},
                       {"norm_bound", fopt.norm_bound}});
      emit(io::trajectory_csv(traj), fc.out, io::manifest("flow", fc.game, opts, std::nullopt, fc.tolerances()),
           out);
      err << "outcome: " << to_string(traj.outcome) << " t=" << io::num(traj.times.back())
          << " final=" << detail::format_vector(traj.final_point()) << "\n";
      return kOk;
    }

    if (*cont) {
      const Game game = load_game_file(pc.game);
      const Vector u = parse_vector(ppoint, "--point");
      const auto range = parse_numbers(s_range, "--s-range");
      if (range.size() != 2) throw InputError("--s-range: expected s_min,s_max");
      ContinuationOptions copt;
      copt.s_min = range[0];
      copt.s_max = range[1];
      copt.ds = ds;
      copt.tolerances = pc.tolerances();
      copt.newton.method = pc.method();
      copt.newton.classify_tolerances = pc.tolerances();
      const ContinuationPath path = continue_path(game, parse_zeta(zeta_spec, game), u, copt);
      Json opts = common_options(pc);
      opts.update(Json{{"point", ppoint}, {"zeta", zeta_spec}, {"s_range", s_range}, {"ds", ds}});
      emit(io::path_csv(path), pc.out, io::manifest("continue", pc.game, opts, std::nullopt, pc.tolerances()),
           out);
      err << "status: " << to_string(path.status);
      if (path.status != PathStatus::complete)
        err << " at s=" << io::num(path.status_s) << " (" << path.reason << ")";
      err << "\n";
      return kOk;
    }

    if (*olg) {
      const OpenLoopGame g = load_open_loop_game_file(oc.game);
      ControlProfile profile = ControlProfile::zeros(g);
      if (!profile_file.empty()) profile = profile_from_csv(g, read_text_file(profile_file));
      if (!constant.empty()) {
        if (!profile_file.empty()) throw InputError("give either --profile or --constant");
        const Vector c = parse_vector(constant, "--constant");
        std::size_t total = 0;
        for (auto kd : g.control_dims()) total += kd;
        if (static_cast<std::size_t>(c.size()) != total)
          throw InputError("--constant: expected " + std::to_string(total) + " values");
        std::vector<Vector> vals;
        Eigen::Index off = 0;
        for (auto kd : g.control_dims()) {
          vals.push_back(c.segment(off, static_cast<Eigen::Index>(kd)));
          off += static_cast<Eigen::Index>(kd);
        }
        profile = ControlProfile::constant(g, vals);
      }
      Json opts{{"profile", profile_file}, {"constant", constant}, {"steps", g.steps()},
                {"horizon", g.horizon()}};

      if (*olg_sim) {
        const StateTrajectory st = simulate_state(g, profile);
        std::ostringstream csv;
        csv << "t";
        for (std::size_t r = 0; r < g.state_dim(); ++r) csv << ",x" << r + 1;
        csv << "\n";
        for (std::size_t n = 0; n < st.times.size(); ++n) {
          csv << io::num(st.times[n]);
          for (Eigen::Index r = 0; r < st.states[n].size(); ++r) csv << "," << io::num(st.states[n][r]);
          csv << "\n";
        }
        emit(csv.str(), oc.out, io::manifest("olg simulate", oc.game, opts, std::nullopt, {}), out);
        return kOk;
      }
      if (*olg_grad) {
        const ControlProfile grad{ol_game_form(g, profile)};
        emit(profile_to_csv(g, grad), oc.out,
             io::manifest("olg gradient", oc.game, opts, std::nullopt, {}), out);
        return kOk;
      }
      if (*olg_play) {
        const OlPlayResult r = ol_gradient_play(g, profile, play_opt);
        opts.update(Json{{"alpha", play_opt.alpha}, {"max_iters", play_opt.max_iters}, {"tol", play_opt.tol}});
        emit(profile_to_csv(g, r.profile), oc.out,
             io::manifest("olg play", oc.game, opts, std::nullopt, {}), out);
        err << "status: " << to_string(r.status) << " iterations=" << r.iterations
            << " sup_norm=" << io::num(r.sup_norms.back()) << "\n";
        return kOk;
      }
      if (*olg_cls) {
        const EquilibriumReport rep = ol_classify(g, profile, ocl_opt);
        Json j = io::to_json(rep);
        j["steps"] = g.steps();
        opts.update(Json{{"fd_step", ocl_opt.fd_step}, {"cap", ocl_opt.max_dimension}});
        emit(j.dump(2) + "\n", oc.out,
             io::manifest("olg classify", oc.game, opts, std::nullopt, ocl_opt.tolerances), out);
        err << "N=" << g.steps() << ": " << rep.classification.describe()
            << (rep.jacobian_degenerate() ? " [d omega singular]" : "") << "\n";
        return kOk;
      }
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const MethodUnavailable& e) {
    err << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return kDimension;
  } catch (const PreconditionError& e) {
    err << "refused: " << e.what() << "\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kInput;
}

}  // namespace nashlocal::cli
