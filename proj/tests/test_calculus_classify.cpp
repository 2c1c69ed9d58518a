#include "support.hpp"

using namespace nashlocal;
using oracle::mat2;
using oracle::vec;

namespace {

const DerivMethod kMethods[] = {DerivMethod::analytic, DerivMethod::dual, DerivMethod::central_fd};

/// f(u) = exp(u1/4) sin(u2) + u1^2 u3 / 3 + cosh-like terms; dual-capable, no
/// analytic derivatives.
Cost smooth_generic() {
  return Cost::generic(3, [](auto x) {
    using std::exp;
    using std::sin;
    return exp(x[0] * 0.25) * sin(x[1]) + x[0] * x[0] * x[2] / 3.0 + x[2] * x[2] + x[1] * x[2];
  });
}

double smooth_value(const Vector& x) {
  return std::exp(x[0] * 0.25) * std::sin(x[1]) + x[0] * x[0] * x[2] / 3.0 + x[2] * x[2] + x[1] * x[2];
}

/// Composes a cost with per-coordinate block maps u = A v + c.
Cost reparameterize(const Cost& f, const Matrix& A, const Vector& c) {
  return Cost::generic(static_cast<std::size_t>(A.cols()), [f, A, c](auto x) {
    using T = std::remove_cv_t<typename decltype(x)::element_type>;
    const auto n = static_cast<std::size_t>(A.rows());
    if constexpr (std::is_same_v<T, double>) {
      Vector v(A.cols());
      for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = x[static_cast<std::size_t>(k)];
      return f.value(Vector(A * v + c));
    } else {
      std::vector<T> y(n);
      for (std::size_t r = 0; r < n; ++r) {
        T s(c[static_cast<Eigen::Index>(r)]);
        for (std::size_t k = 0; k < x.size(); ++k) s += A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) * x[k];
        y[r] = s;
      }
      return f.value(std::span<const T>(y));
    }
  });
}

/// Two players, dims (2, 1): f1 = |u1|^2/2 + u1 . w u2, f2 = u2^2 + u2 (k . u1).
Game coupled_game() {
  Polynomial f1(3), f2(3);
  f1.add_term(0.5, {2, 0, 0}).add_term(0.5, {0, 2, 0}).add_term(0.3, {1, 0, 1}).add_term(-0.7, {0, 1, 1});
  f2.add_term(1.0, {0, 0, 2}).add_term(0.4, {1, 0, 1}).add_term(0.2, {0, 1, 1});
  return Game({2, 1}, {Cost::polynomial(f1), Cost::polynomial(f2)});
}

}  // namespace

TEST(Calculus, PlayerGradientExamples) {
  for (auto m : kMethods) {
    EXPECT_NEAR(player_gradient(builtin::betty_sue(), 0, vec({3, 5}), m)[0], -2.0, 1e-9);
    EXPECT_NEAR(player_gradient(builtin::betty_sue_perturbed(0.1), 0, vec({0, 0}), m)[0], 0.1, 1e-9);
  }
}

TEST(Calculus, GameFormExamples) {
  const Game g = builtin::betty_sue();
  EXPECT_EQ(game_form(g, vec({7, 7}), DerivMethod::analytic).stacked, vec({0, 0}));
  EXPECT_EQ(game_form(g, vec({1, 0}), DerivMethod::analytic).stacked, vec({1, -1}));
  for (double eps : {0.1, -0.01, 3.0})
    for (double q : {-4.0, 0.0, 2.5}) {
      const Vector w = game_form(builtin::betty_sue_perturbed(eps), vec({q, q}), DerivMethod::analytic).stacked;
      EXPECT_NEAR(w[0], eps, 1e-14);
      EXPECT_NEAR(w[1], 0.0, 1e-14);
    }
  const GameFormValue v = game_form(coupled_game(), vec({1, 2, 3}), DerivMethod::dual);
  ASSERT_EQ(v.blocks.size(), 2u);
  EXPECT_EQ(v.blocks[0].size(), 2);
  EXPECT_EQ(v.blocks[1].size(), 1);
  EXPECT_EQ(v.at_point, vec({1, 2, 3}));
}

TEST(Calculus, HessianExamples) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const Vector u = oracle::uniform_point(rng, 2, -10, 10);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_NEAR(player_hessian(builtin::betty_sue(), i, u, DerivMethod::analytic).matrix(0, 0), 1.0, 1e-14);
      for (double a : {1.0, -0.5, 3.0})
        EXPECT_NEAR(player_hessian(builtin::incentive_game(a, 20), i, u, DerivMethod::dual).matrix(0, 0), 1 + a,
                    1e-12);
    }
  }
}

TEST(Calculus, JacobianExamples) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const Vector u = oracle::uniform_point(rng, 2, -10, 10);
    for (auto m : kMethods) {
      const double tol = m == DerivMethod::central_fd ? 1e-6 : 1e-12;
      EXPECT_LT(oracle::rel_err(game_jacobian(builtin::betty_sue(), u, m).matrix, mat2(1, -1, -1, 1)), tol);
      for (double a : {0.5, 2.0, -1.0})
        EXPECT_LT(oracle::rel_err(game_jacobian(builtin::betty_sue_asym(a), u, m).matrix, mat2(1, -a, -1, 1)), tol);
      for (double a : {1.0, -0.5, 0.0})
        EXPECT_LT(
            oracle::rel_err(game_jacobian(builtin::incentive_game(a, 20), u, m).matrix, mat2(1 + a, -1, -1, 1 + a)),
            tol);
    }
  }
}

TEST(Calculus, NonSymmetryWitness) {
  const Matrix J = game_jacobian(builtin::betty_sue_asym(2.0), vec({0.3, -1}), DerivMethod::analytic).matrix;
  EXPECT_DOUBLE_EQ((J - J.transpose()).cwiseAbs().maxCoeff(), 1.0);
}

TEST(Calculus, QuadraticExactness) {
  Matrix A1(2, 2), A2(2, 2);
  A1 << 2, -1, -1, 4;
  A2 << 1, 0.5, 0.5, 3;
  const Vector b1 = vec({1, -2}), b2 = vec({0.5, 0.25});
  const Game g({1, 1}, {Cost::quadratic(QuadraticForm(A1, b1, 0)), Cost::quadratic(QuadraticForm(A2, b2, 1))});
  std::mt19937_64 rng(4);
  const Matrix J0 = game_jacobian(g, vec({0, 0}), DerivMethod::analytic).matrix;
  for (int t = 0; t < 10; ++t) {
    const Vector u = oracle::uniform_point(rng, 2, -10, 10);
    const Vector w = game_form(g, u, DerivMethod::analytic).stacked;
    EXPECT_EQ(w[0], (A1 * u + b1)[0]);
    EXPECT_EQ(w[1], (A2 * u + b2)[1]);
    EXPECT_EQ(game_jacobian(g, u, DerivMethod::analytic).matrix, J0);
    EXPECT_EQ(player_hessian(g, 1, u, DerivMethod::analytic).matrix(0, 0), 3.0);
  }
}

TEST(Calculus, MethodsAgreeWithOracleOnBuiltins) {
  std::mt19937_64 rng(9);
  for (const auto& [name, g] : oracle::builtin_zoo()) {
    for (int t = 0; t < 50; ++t) {
      const Vector u = oracle::uniform_point(rng, 2, -10, 10);
      for (std::size_t i = 0; i < 2; ++i) {
        const oracle::Fn f = [&, i](const Vector& x) { return g.eval_cost(i, x); };
        const Vector gref = oracle::gradient(f, u).segment(static_cast<Eigen::Index>(i), 1);
        const Matrix href = oracle::hessian(f, u);
        for (auto m : kMethods) {
          EXPECT_LT(oracle::rel_err(player_gradient(g, i, u, m), gref), 1e-6) << name << " " << to_string(m);
          EXPECT_LT(oracle::rel_err(Matrix(game_jacobian(g, u, m).matrix.row(static_cast<Eigen::Index>(i))),
                                    Matrix(href.row(static_cast<Eigen::Index>(i)))),
                    1e-6)
              << name << " " << to_string(m);
        }
      }
    }
  }
}

TEST(Calculus, MethodsAgreeOnGenericCost) {
  const Cost f = smooth_generic();
  const Game g({2, 1}, {f, f});
  EXPECT_EQ(preferred_method(g), DerivMethod::dual);
  EXPECT_THROW(game_form(g, vec({0, 0, 0}), DerivMethod::analytic), MethodUnavailable);
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    const Vector u = oracle::uniform_point(rng, 3, -2, 2);
    const Vector gref = oracle::gradient(smooth_value, u);
    const Matrix href = oracle::hessian(smooth_value, u, 1e-3);
    for (auto m : {DerivMethod::dual, DerivMethod::central_fd}) {
      EXPECT_LT(oracle::rel_err(player_gradient(g, 0, u, m), Vector(gref.head(2))), 1e-6);
      EXPECT_LT(oracle::rel_err(game_jacobian(g, u, m).matrix, href), 1e-6) << to_string(m);
    }
  }
}

TEST(Calculus, ValueOnlyCostUsesSecondDifferences) {
  const Cost f = Cost::from_values(3, [](std::span<const double> x) {
    return smooth_value(Eigen::Map<const Vector>(x.data(), 3));
  });
  const Game g({1, 2}, {f, f});
  EXPECT_EQ(preferred_method(g), DerivMethod::central_fd);
  EXPECT_THROW(game_form(g, vec({0, 0, 0}), DerivMethod::dual), MethodUnavailable);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const Vector u = oracle::uniform_point(rng, 3, -2, 2);
    EXPECT_LT(oracle::rel_err(game_jacobian(g, u, DerivMethod::central_fd).matrix,
                              oracle::hessian(smooth_value, u, 1e-3)),
              1e-6);
  }
}

TEST(Calculus, DiagonalBlocksMatchPlayerHessians) {
  std::mt19937_64 rng(13);
  const Game games[] = {coupled_game(), Game({2, 1}, {smooth_generic(), smooth_generic()})};
  for (const Game& g : games)
    for (int t = 0; t < 10; ++t) {
      const Vector u = oracle::uniform_point(rng, 3, -2, 2);
      for (auto m : kMethods) {
        if (m == DerivMethod::analytic && !g.all_have_analytic()) continue;
        const Matrix J = game_jacobian(g, u, m).matrix;
        for (std::size_t i = 0; i < 2; ++i) {
          const auto off = static_cast<Eigen::Index>(g.offset(i));
          const auto mi = static_cast<Eigen::Index>(g.dim(i));
          const Matrix Hj = J.block(off, off, mi, mi);
          const Matrix H = player_hessian(g, i, u, m).matrix;
          EXPECT_LT(oracle::rel_err(Matrix(0.5 * (Hj + Hj.transpose())), H), 1e-6);
          EXPECT_LT((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-8);
        }
      }
    }
}

TEST(Classify, Examples) {
  const auto bs = classify_point(builtin::betty_sue(), vec({2, 2}));
  EXPECT_TRUE(bs.classification.is_differential_nash());
  EXPECT_TRUE(bs.classification.degenerate);
  EXPECT_EQ(bs.classification.describe(), "differential Nash (degenerate)");
  EXPECT_DOUBLE_EQ(bs.jacobian_singular_values.back(), 0.0);

  const auto inc = classify_point(builtin::incentive_game(1, 20), vec({20, 20}));
  EXPECT_EQ(inc.classification.describe(), "differential Nash (non-degenerate, stable)");
  const auto ev = oracle::eig2(2, -1, -1, 2);
  EXPECT_NEAR(inc.jacobian_eigenvalues[0].real(), ev[0].real(), 1e-12);
  EXPECT_NEAR(inc.jacobian_eigenvalues[1].real(), ev[1].real(), 1e-12);

  const auto saddle = classify_point(builtin::incentive_game(-0.5, 0), vec({0, 0}));
  EXPECT_TRUE(saddle.classification.is_nondegenerate_nash());
  EXPECT_EQ(saddle.classification.flow, FlowStability::unstable);
  EXPECT_NEAR(saddle.jacobian_eigenvalues[0].real(), -0.5, 1e-12);
  EXPECT_NEAR(saddle.jacobian_eigenvalues[1].real(), 1.5, 1e-12);

  const auto nc = classify_point(builtin::betty_sue(), vec({1, 0}));
  EXPECT_EQ(nc.classification.verdict, Verdict::not_critical);
  EXPECT_EQ(nc.omega, vec({1, -1}));
  EXPECT_EQ(nc.classification.code(), "NC");
}

TEST(Classify, ContinuumIsDegenerateEverywhere) {
  for (double q : {-3.0, 0.0, 1.0, 7.0}) {
    const auto r = classify_point(builtin::betty_sue(), vec({q, q}));
    EXPECT_TRUE(r.classification.is_differential_nash());
    EXPECT_TRUE(r.classification.degenerate) << q;
  }
}

TEST(Classify, SecondOrderViolationAndNecessaryOnly) {
  Polynomial f1(2), f2(2);
  f1.add_term(-0.5, {2, 0});
  f2.add_term(0.5, {0, 2});
  EXPECT_EQ(classify_point(Game({1, 1}, {Cost::polynomial(f1), Cost::polynomial(f2)}), vec({0, 0}))
                .classification.verdict,
            Verdict::second_order_violated);
  Polynomial g1(2);
  g1.add_term(1.0, {4, 0});
  const auto r = classify_point(Game({1, 1}, {Cost::polynomial(g1), Cost::polynomial(f2)}), vec({0, 0}));
  EXPECT_EQ(r.classification.verdict, Verdict::necessary_only);
  EXPECT_EQ(r.classification.code(), "NEC");
  EXPECT_TRUE(r.jacobian_degenerate());
}

TEST(Classify, MarginalFlow) {
  // det d omega = 1 - a, so the small eigenvalue (1 - a)/2 sits inside the
  // band while sigma_min / sigma_max stays above the singular cutoff.
  const auto r = classify_point(builtin::betty_sue_asym(1.0 - 1e-8), vec({0, 0}));
  EXPECT_TRUE(r.classification.is_nondegenerate_nash());
  EXPECT_EQ(r.classification.flow, FlowStability::marginal);
  EXPECT_EQ(r.classification.code(), "DN-M");
  Polynomial f1(2), f2(2);
  f1.add_term(0.5, {2, 0}).add_term(1.0, {1, 1});
  f2.add_term(0.5, {0, 2}).add_term(-1.0, {1, 1});
  const auto rot = classify_point(Game({1, 1}, {Cost::polynomial(f1), Cost::polynomial(f2)}), vec({0, 0}));
  EXPECT_EQ(rot.classification.code(), "DN-S");
  EXPECT_NEAR(std::abs(rot.jacobian_eigenvalues[0].imag()), 1.0, 1e-12);
}

TEST(Classify, ReportsTolerancesAndOrdering) {
  Tolerances tol{1e-6, 1e-7, 1e-9};
  const auto r = classify_point(builtin::betty_sue_asym(2), vec({0, 0}), tol);
  EXPECT_EQ(r.tolerances.critical, 1e-6);
  EXPECT_EQ(r.tolerances.singular, 1e-9);
  for (std::size_t k = 1; k < r.jacobian_singular_values.size(); ++k)
    EXPECT_GE(r.jacobian_singular_values[k - 1], r.jacobian_singular_values[k]);
  EXPECT_THROW(classify_point(builtin::betty_sue(), vec({0, 0}), Tolerances{0, 1, 1}), InputError);
}

TEST(Oracle, Examples) {
  EXPECT_EQ(local_nash_oracle(builtin::betty_sue(), vec({2, 2}), 0.5, 11).verdict, OracleVerdict::confirmed_strict);
  const auto v = local_nash_oracle(builtin::betty_sue(), vec({1, 0}), 0.5, 11);
  EXPECT_EQ(v.verdict, OracleVerdict::violated);
  EXPECT_EQ(v.player, 0u);
  EXPECT_LT(v.witness[0], 1.0);
  Polynomial f(1);
  f.add_term(1.0, {2});
  EXPECT_EQ(local_nash_oracle(Game({1}, {Cost::polynomial(f)}), vec({0}), 1.0, 11).verdict,
            OracleVerdict::confirmed_strict);
}

TEST(Oracle, TiesAreInconclusiveAndGuardsHold) {
  const Cost flat = Cost::polynomial(Polynomial(2));
  EXPECT_EQ(local_nash_oracle(Game({1, 1}, {flat, flat}), vec({0, 0}), 0.1, 5).verdict,
            OracleVerdict::inconclusive);
  const Cost wide = Cost::polynomial(Polynomial(5));
  EXPECT_THROW(local_nash_oracle(Game({3, 2}, {wide, wide}), Vector::Zero(5), 0.1, 5), DimensionError);
  EXPECT_THROW(local_nash_oracle(builtin::betty_sue(), vec({0, 0}), 0.0, 5), InputError);
  EXPECT_THROW(local_nash_oracle(builtin::betty_sue(), vec({0, 0}), 0.1, 4), InputError);
}

TEST(Classify, SoundnessAgainstOracle) {
  std::mt19937_64 rng(21);
  int nash = 0;
  for (const auto& [name, g] : oracle::builtin_zoo()) {
    for (int t = 0; t < 50; ++t) {
      // Half the sample sits on equilibria, half is random.
      Vector u = oracle::uniform_point(rng, 2, -10, 10);
      if (t % 2 == 0) {
        NewtonResult nr = newton_solve(g, u);
        if (nr.converged()) u = nr.point;
        else if (name == "betty_sue") u = vec({u[0], u[0]});
      }
      const auto r = classify_point(g, u);
      const auto o = local_nash_oracle(g, u, 0.1, 11);
      if (r.classification.is_differential_nash()) {
        ++nash;
        EXPECT_EQ(o.verdict, OracleVerdict::confirmed_strict) << name << " " << u.transpose();
      }
      if (r.classification.verdict == Verdict::not_critical)
        EXPECT_TRUE(o.verdict == OracleVerdict::violated || r.omega_norm > 0) << name;
    }
  }
  EXPECT_GT(nash, 50);
}

TEST(Classify, NonDegenerateEquilibriaAreIsolated) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> n01;
  for (const auto& [name, g] : oracle::builtin_zoo()) {
    NewtonResult nr = newton_solve(g, vec({1, 1}));
    if (!nr.converged() || !nr.report->classification.is_nondegenerate_nash()) continue;
    for (int t = 0; t < 20; ++t) {
      Vector d(2);
      d << n01(rng), n01(rng);
      const Vector u0 = nr.point + 0.05 * std::uniform_real_distribution<double>(0, 1)(rng) * d.normalized();
      const NewtonResult r = newton_solve(g, u0);
      ASSERT_TRUE(r.converged()) << name;
      EXPECT_LT((r.point - nr.point).norm(), 1e-6) << name;
    }
  }
}

TEST(Classify, AffineReparameterizationInvariance) {
  Matrix A(3, 3);
  A << 2.0, 0.5, 0, -0.3, 1.5, 0, 0, 0, -0.7;
  const Vector c = vec({1.0, -2.0, 0.5});
  struct Case {
    Game g;
    Vector u;
  };
  const Game cg = coupled_game();
  const std::vector<Case> cases{{cg, vec({0, 0, 0})}, {cg, vec({0.3, 0.1, -0.2})}};
  for (const auto& [g, u] : cases) {
    const Game h(g.dims(), {reparameterize(g.cost(0), A, c), reparameterize(g.cost(1), A, c)});
    const Vector v = A.fullPivLu().solve(u - c);
    const auto r1 = classify_point(g, u);
    const auto r2 = classify_point(h, v);
    EXPECT_EQ(r1.classification.verdict, r2.classification.verdict);
    EXPECT_EQ(r1.classification.degenerate, r2.classification.degenerate);
  }
  // Scalar blocks: the Betty-Sue continuum stays degenerate under u_i = a_i v_i + b_i.
  Matrix S(2, 2);
  S << 3.0, 0, 0, -0.5;
  const Vector s = vec({1, 2});
  const Game bs = builtin::betty_sue();
  const Game h(bs.dims(), {reparameterize(bs.cost(0), S, s), reparameterize(bs.cost(1), S, s)});
  for (double q : {-3.0, 0.0, 7.0}) {
    const Vector v = S.inverse() * (vec({q, q}) - s);
    const auto r = classify_point(h, v);
    EXPECT_TRUE(r.classification.is_differential_nash());
    EXPECT_TRUE(r.classification.degenerate);
  }
}
