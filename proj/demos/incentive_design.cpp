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

// Walks the Betty-Sue game from its continuum of equilibria to a unique,
// stable one by adding an incentive (a/2)(u_i - tau)^2 to both costs.

#include "nashlocal/nashlocal.hpp"

#include <iostream>

using namespace nashlocal;

int main() {
  const Game line = builtin::betty_sue();
  for (double q : {-3.0, 0.0, 7.0}) {
    const Vector u = Vector::Constant(2, q);
    std::cout << "betty_sue at " << detail::format_vector(u) << ": "
              << classify_point(line, u).classification.describe() << "\n";
  }

  for (double a : {1.0, -0.5, 0.0}) {
    const Game g = builtin::incentive_game(a, 20.0);
    const auto rep = classify_point(g, Vector::Constant(2, 20.0));
    std::cout << "incentive a=" << a << " at (20, 20): " << rep.classification.describe() << "\n";
  }

  const Game g = builtin::incentive_game(1.0, 20.0);
  const FlowTrajectory traj = gradient_play(g, Vector::Zero(2));
  std::cout << "gradient play from (0, 0): " << to_string(traj.outcome) << " at t="
            << traj.times.back() << ", final " << detail::format_vector(traj.final_point()) << "\n";

  std::vector<Cost> zeta;
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<unsigned> e(2, 0);
    e[i] = 1;
    zeta.push_back(Cost::polynomial(Polynomial(2).add_term(1.0, e)));
  }
  const ContinuationPath path = continue_path(g, zeta, Vector::Constant(2, 20.0));
  std::cout << "continuation with zeta_i = u_i:\n" << io::path_csv(path);
}
