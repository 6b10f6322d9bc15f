#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <unistd.h>
#include <sys/wait.h>

#include "cli/commands.hpp"
#include "cli/design_file.hpp"
#include "cli/trace_file.hpp"

namespace spinstar::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = execute(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spinstar_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, DesignToStdout) {
  const CliRun r = run({"design", "--bystanders", "2", "--eta", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const RoutingState s = parse_design(r.out);
  EXPECT_NEAR(s.base.params.e, 0.516398, 1e-6);
  EXPECT_NEAR(s.base.params.a, 0.0, 1e-9);
  EXPECT_NEAR(s.base.params.d, -0.516398, 1e-6);
  EXPECT_DOUBLE_EQ(s.base.params.b, std::sqrt(2.0));
  EXPECT_EQ(s.base.params.c, 1.0);
}

TEST_F(CliTest, InfeasibleDesignExitsTwo) {
  const CliRun r = run({"design", "--bystanders", "1000", "--eta", "2"});
  EXPECT_EQ(r.code, kExitInfeasible);
  EXPECT_NE(r.err.find("g_min"), std::string::npos);
  EXPECT_NE(r.err.find("1300"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, kExitFailure);
  EXPECT_EQ(run({"design", "--bystanders", "2"}).code, kExitFailure);
  EXPECT_EQ(run({"design", "--bystanders", "2", "--eta", "3"}).code, kExitFailure);
  EXPECT_EQ(run({"design", "--bystanders", "2", "--eta", "4", "--root", "middle"}).code,
            kExitFailure);
  EXPECT_EQ(run({"frobnicate"}).code, kExitFailure);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, DesignVerifySimulateRoundTrip) {
  const std::string design = path("d.json");
  ASSERT_EQ(run({"design", "--bystanders", "2", "--eta", "4", "--out", design}).code, kExitOk);
  const CliRun verified = run({"verify", "--design", design});
  EXPECT_EQ(verified.code, kExitOk) << verified.out;
  EXPECT_NE(verified.out.find("PASSED"), std::string::npos);

  const std::string trace_path = path("t.csv");
  ASSERT_EQ(run({"simulate", "--design", design, "--out", trace_path}).code, kExitOk);
  std::ifstream in(trace_path);
  const FidelityTrace trace = read_trace(in);
  ASSERT_EQ(trace.size(), 1000u);
  const double tau = parse_design(slurp(design)).base.transfer_time;
  std::size_t nearest = 0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (std::abs(trace.times[k] - tau) < std::abs(trace.times[nearest] - tau)) nearest = k;
  }
  const auto peak = std::max_element(trace.values.begin(), trace.values.end());
  EXPECT_EQ(static_cast<std::size_t>(peak - trace.values.begin()), nearest);
  EXPECT_GE(*peak, 1.0 - 1e-6);
  EXPECT_NEAR(trace.times.back(), 1.2 * tau, 0.01 * tau);
}

TEST_F(CliTest, SimulateOptions) {
  const std::string design = path("d.json");
  ASSERT_EQ(run({"design", "--bystanders", "5", "--eta", "8", "--out", design}).code, kExitOk);
  const std::string reduced = path("r.csv"), full = path("f.csv");
  ASSERT_EQ(run({"simulate", "--design", design, "--t-max", "10", "--steps", "50", "--out",
                 reduced}).code,
            kExitOk);
  ASSERT_EQ(run({"simulate", "--design", design, "--t-max", "10", "--steps", "50", "--full",
                 "--out", full}).code,
            kExitOk);
  std::ifstream a(reduced), b(full);
  const FidelityTrace ra = read_trace(a), fb = read_trace(b);
  ASSERT_EQ(ra.size(), 50u);
  EXPECT_EQ(ra.times.back(), 10.0);
  for (std::size_t k = 0; k < ra.size(); ++k) EXPECT_NEAR(ra.values[k], fb.values[k], 1e-10);

  // Node 3 is a bystander: the route breaks the reduction's symmetry and
  // only the full model can evolve it.
  EXPECT_EQ(run({"simulate", "--design", design, "--source", "1", "--target", "3", "--out",
                 path("y.csv")}).code,
            kExitFailure);
  EXPECT_EQ(run({"simulate", "--design", design, "--source", "1", "--target", "3", "--full",
                 "--out", path("y.csv")}).code,
            kExitOk);
  EXPECT_EQ(run({"simulate", "--design", design, "--full", "--reduced", "--out", path("z.csv")}).code,
            kExitFailure);
}

TEST_F(CliTest, RetargetThenVerify) {
  const std::string design = path("d.json"), moved = path("m.json");
  ASSERT_EQ(run({"design", "--bystanders", "2", "--eta", "4", "--out", design}).code, kExitOk);
  ASSERT_EQ(run({"retarget", "--design", design, "--target", "3", "--out", moved}).code, kExitOk);
  const RoutingState s = parse_design(slurp(moved));
  EXPECT_EQ(s.target, 3u);
  const CliRun verified = run({"verify", "--design", moved});
  EXPECT_EQ(verified.code, kExitOk) << verified.out;
  EXPECT_NE(verified.out.find("1 -> 3"), std::string::npos);
  EXPECT_EQ(run({"retarget", "--design", design, "--target", "1", "--out", moved}).code,
            kExitFailure);
}

TEST_F(CliTest, VerifyRejectsTamperedAndBrokenFiles) {
  const std::string design = path("d.json");
  ASSERT_EQ(run({"design", "--bystanders", "2", "--eta", "4", "--out", design}).code, kExitOk);
  std::string text = slurp(design);
  const auto pos = text.find("\"e\": 5.16");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 10, "\"e\": 5.26");
  const std::string tampered = path("t.json");
  std::ofstream(tampered) << text;
  const CliRun r = run({"verify", "--design", tampered});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.out.find("FAILED"), std::string::npos);

  const std::string broken = path("b.json");
  std::ofstream(broken) << "{\"schema_version\": 1}";
  const CliRun b = run({"verify", "--design", broken});
  EXPECT_EQ(b.code, kExitFailure);
  EXPECT_NE(b.err.find("'m'"), std::string::npos) << b.err;
}

TEST_F(CliTest, SweepTable) {
  const CliRun r = run({"sweep", "--m-min", "1", "--m-max", "4"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "M,eta,e,a,d,tau,abs_a_over_sqrtM,abs_d_over_sqrtM");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_NE(r.out.find("\n3,4,"), std::string::npos);

  const CliRun capped = run({"sweep", "--m-min", "10", "--m-max", "11", "--eta-max", "10"});
  EXPECT_NE(capped.out.find("10,infeasible"), std::string::npos);
  EXPECT_EQ(run({"sweep", "--m-min", "5", "--m-max", "4"}).code, kExitFailure);
}

TEST_F(CliTest, ByteIdenticalReruns) {
  for (int pass = 0; pass < 2; ++pass) {
    const std::string tag = std::to_string(pass);
    ASSERT_EQ(run({"design", "--bystanders", "7", "--eta", "12", "--root", "largest", "--out",
                   path("d" + tag + ".json")}).code,
              kExitOk);
    ASSERT_EQ(run({"simulate", "--design", path("d" + tag + ".json"), "--out",
                   path("t" + tag + ".csv")}).code,
              kExitOk);
  }
  EXPECT_EQ(slurp(path("d0.json")), slurp(path("d1.json")));
  EXPECT_EQ(slurp(path("t0.csv")), slurp(path("t1.csv")));
  EXPECT_EQ(run({"sweep", "--m-min", "1", "--m-max", "20"}).out,
            run({"sweep", "--m-min", "1", "--m-max", "20"}).out);
}

TEST_F(CliTest, RealProcessExitCodes) {
  const std::string cli = SPINSTAR_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("design --bystanders 2 --eta 4 --out " + path("d.json")), 0);
  EXPECT_EQ(status("verify --design " + path("d.json")), 0);
  EXPECT_EQ(status("design --bystanders 1000 --eta 2"), 2);
  EXPECT_EQ(status("design --eta 4"), 1);
}

TEST(SimulationGrid, AlignsTauByDefault) {
  const double tau = 6.0836680139604180;
  const auto grid = simulation_grid(tau, std::nullopt, 1000);
  ASSERT_EQ(grid.size(), 1000u);
  EXPECT_EQ(grid[833], tau);
  EXPECT_EQ(grid.front(), 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k) EXPECT_GT(grid[k], grid[k - 1]);
  const auto explicit_grid = simulation_grid(tau, 5.0, 11);
  EXPECT_EQ(explicit_grid.back(), 5.0);
  EXPECT_EQ(simulation_grid(tau, std::nullopt, 1), std::vector<double>{0.0});
  EXPECT_THROW(simulation_grid(tau, std::nullopt, 0), ValidationError);
}

}  // namespace
}  // namespace spinstar::cli
