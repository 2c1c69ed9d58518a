#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nashlocal::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string game(const std::string& name) { return std::string(NASHLOCAL_DEMO_DIR) + "/games/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nashlocal_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Cli, ClassifyVerdicts) {
  CliResult r = cli({"classify", "--game", game("betty_sue.json"), "--point", "3,3", "--point", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("differential Nash (degenerate)"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("not critical"), std::string::npos) << r.err;
  const auto j = nashlocal::Json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["code"], "DN-D");
  EXPECT_EQ(j[1]["code"], "NC");

  r = cli({"classify", "--game", game("incentive.json"), "--point", "20,20", "--deriv", "fd"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("differential Nash (non-degenerate, stable)"), std::string::npos) << r.err;

  r = cli({"classify", "--game", game("incentive_saddle.json"), "--point", "20,20", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "u1,u2,omega_norm,min_eig_1,min_eig_2,sigma_min,code");
  EXPECT_NE(r.out.find("DN-U"), std::string::npos);
}

TEST(Cli, SolveReportsRootsAndFailures) {
  CliResult r = cli({"solve", "--game", game("betty_sue_asym.json"), "--box", "-5,5", "--k", "16", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nashlocal::Json::parse(r.out);
  ASSERT_EQ(j["roots"].size(), 1u);
  EXPECT_EQ(j["roots"][0]["code"], "DN-U");

  r = cli({"solve", "--game", game("betty_sue_perturbed.json"), "--box", "-10,10"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nashlocal::Json::parse(r.out);
  EXPECT_EQ(j["roots"].size(), 0u);
  EXPECT_EQ(j["failure_count"], 64);
}

TEST(Cli, FlowOutcomes) {
  CliResult r = cli({"flow", "--game", game("incentive.json"), "--point", "0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("outcome: converged"), std::string::npos) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,u1,u2,omega_norm");

  r = cli({"flow", "--game", game("incentive_saddle.json"), "--point", "0,0", "--tmax", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("outcome: diverged"), std::string::npos) << r.err;
}

TEST(Cli, ContinueTracksAndRefuses) {
  CliResult r = cli({"continue", "--game", game("incentive.json"), "--point", "20,20", "--zeta", "own"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("status: complete"), std::string::npos) << r.err;
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, "s,u1,u2,sigma_min,code");
  int n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 11);

  r = cli({"continue", "--game", game("betty_sue.json"), "--point", "1,1", "--zeta", "own"});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"classify", "--game", "/nonexistent.json", "--point", "0,0"}).code, 2);
  EXPECT_EQ(cli({"classify", "--game", game("betty_sue.json"), "--point", "0,0,0"}).code, 2);
  EXPECT_EQ(cli({"classify", "--game", game("betty_sue.json"), "--point", "0,0", "--deriv", "symbolic"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"flow", "--game", game("incentive.json"), "--point", "0,0", "--integrator", "euler"}).code, 2);
  EXPECT_EQ(cli({"olg", "classify", "--game", game("olg_shared_target.json")}).code, 3);
  EXPECT_EQ(cli({"olg", "classify", "--game", game("olg_shared_target.json"), "--constant", "0.5,0.5", "--cap", "5"})
                .code,
            4);
  EXPECT_EQ(cli({"--version"}).code, 0);
}

TEST(Cli, OpenLoopSubcommands) {
  CliResult r = cli({"olg", "simulate", "--game", game("olg_shared_target.json"), "--constant", "0.5,0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  EXPECT_EQ(last.substr(0, 2), "1,") << last;
  EXPECT_NEAR(std::stod(last.substr(2)), 1.0, 1e-14);

  r = cli({"olg", "gradient", "--game", game("olg_shared_target.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,u1_1,u2_1");
  EXPECT_NE(r.out.find(",-1,-1"), std::string::npos) << r.out;

  r = cli({"olg", "play", "--game", game("olg_shared_target_regularized.json"), "--alpha", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("status: converged"), std::string::npos) << r.err;

  r = cli({"olg", "classify", "--game", game("olg_shared_target.json"), "--constant", "0.5,0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("[d omega singular]"), std::string::npos) << r.err;
  EXPECT_TRUE(nashlocal::Json::parse(r.out)["jacobian_degenerate"].get<bool>());
}

TEST_F(CliFiles, ManifestRecordsSeedAndTolerances) {
  const std::string out = path("roots.json");
  CliResult r = cli({"solve", "--game", game("incentive.json"), "--box", "0,40", "--k", "8", "--seed", "42", "--out", out,
               "--tol-singular", "1e-9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto m = nashlocal::Json::parse(slurp(out + ".manifest.json"));
  EXPECT_EQ(m["command"], "solve");
  EXPECT_EQ(m["seed"], 42);
  EXPECT_DOUBLE_EQ(m["tolerances"]["singular"].get<double>(), 1e-9);
  EXPECT_DOUBLE_EQ(m["tolerances"]["critical"].get<double>(), 1e-8);
  EXPECT_EQ(nashlocal::Json::parse(slurp(out))["roots"].size(), 1u);
}

TEST_F(CliFiles, PointsFileAndProfileRoundTrip) {
  {
    std::ofstream pts(path("pts.csv"));
    pts << "u1,u2\n20,20\n0,0\n";
  }
  CliResult r = cli({"classify", "--game", game("incentive.json"), "--points", path("pts.csv"), "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("DN-S"), std::string::npos);
  EXPECT_NE(r.out.find("NC"), std::string::npos);

  const std::string prof = path("eq.csv");
  r = cli({"olg", "play", "--game", game("olg_shared_target_regularized.json"), "--alpha", "0.2", "--out", prof});
  ASSERT_EQ(r.code, 0) << r.err;
  r = cli({"olg", "classify", "--game", game("olg_shared_target_regularized.json"), "--profile", prof});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("non-degenerate, stable"), std::string::npos) << r.err;
}

TEST_F(CliFiles, FixedStepFlowIsBitReproducible) {
  const std::vector<std::string> base{"flow", "--game", game("incentive.json"), "--point", "1,-3", "--integrator",
                                      "rk4", "--dt", "0.01"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.csv")});
  b.insert(b.end(), {"--out", path("b.csv")});
  ASSERT_EQ(cli(a).code, 0);
  ASSERT_EQ(cli(b).code, 0);
  const std::string x = slurp(path("a.csv"));
  EXPECT_FALSE(x.empty());
  EXPECT_EQ(x, slurp(path("b.csv")));
}
