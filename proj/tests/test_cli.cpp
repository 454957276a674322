#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "toricfam/error.hpp"
#include "toricfam/report.hpp"

using namespace toricfam;

namespace {

std::string g_cli;  // path of the toricfam binary, from argv

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Errc error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Parse;
}

std::string error_text_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kFiberOnly = R"toml(p = 3
n = 1
[[f]]
exponent = [%s]
)toml";

Problem fiber_problem(const std::string& exps) {
  char buf[256];
  std::snprintf(buf, sizeof buf, kFiberOnly, exps.c_str());
  return parse_problem(buf);
}

}  // namespace

TEST(Toml, Values) {
  std::map<std::string, int> lines;
  const auto j = parse_toml(R"toml(# comment
a = 3  # trailing
name = "x # y"
flags = [true, false]
nested = [[1, 2], [-3]]
inline = { k = 1, s = "v" }

[budget]
M = 6

[[f]]
exponent = [1]
[[f]]
exponent = [-1]
)toml",
                            &lines);
  EXPECT_EQ(j["a"], 3);
  EXPECT_EQ(j["name"], "x # y");
  EXPECT_EQ(j["flags"], ojson::parse("[true, false]"));
  EXPECT_EQ(j["nested"], ojson::parse("[[1, 2], [-3]]"));
  EXPECT_EQ(j["inline"]["s"], "v");
  EXPECT_EQ(j["budget"]["M"], 6);
  ASSERT_EQ(j["f"].size(), 2u);
  EXPECT_EQ(j["f"][1]["exponent"][0], -1);
  EXPECT_EQ(lines.at("f[1].exponent"), 14);
}

TEST(Toml, ErrorsCarryPositions) {
  EXPECT_EQ(error_text_of([] { parse_toml("a = 1\nb = 2.5\n"); }),
            "Parse: line 2, column 6: floating-point values are not supported");
  EXPECT_EQ(error_code_of([] { parse_toml("a = \"open\n"); }), Errc::Parse);
  EXPECT_EQ(error_code_of([] { parse_toml("a = 1\na = 2\n"); }), Errc::Parse);
  EXPECT_EQ(error_code_of([] { parse_toml("[t\n"); }), Errc::Parse);
}

TEST(Problem, TomlAndJsonAgree) {
  const auto a = load_problem("problems/kloosterman.toml");
  const auto b = load_problem("problems/kloosterman.json");
  EXPECT_EQ(cmd_fiber(a, {}).report.dump(), cmd_fiber(b, {}).report.dump());
  EXPECT_EQ(cmd_analyze(a, {}).report.dump(), cmd_analyze(b, {}).report.dump());
}

TEST(Problem, ValidationErrorsPointAtTheInput) {
  const std::string weight_one = "p = 2\nn = 1\ns = 1\n[[f]]\nexponent = [3]\n[[P]]\ngamma = [1]\nmu = [3]\n";
  const auto msg = error_text_of([&] { parse_problem(weight_one); });
  EXPECT_NE(msg.find("P[0]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 6"), std::string::npos) << msg;
  EXPECT_EQ(error_code_of([&] { parse_problem(weight_one); }), Errc::WeightOne);
  EXPECT_EQ(exit_code_for(Errc::WeightOne), kExitValidation);
  EXPECT_EQ(exit_code_for(Errc::BudgetExceeded), kExitBudget);

  EXPECT_EQ(error_code_of([] { parse_problem("p = 4\nn = 1\n[[f]]\nexponent = [1]\n"); }), Errc::NotPrime);
  EXPECT_EQ(error_code_of([] { parse_problem("p = 3\nn = 2\n[[f]]\nexponent = [1]\n"); }), Errc::DimensionMismatch);
  EXPECT_EQ(error_code_of([] { parse_problem("p = 3\nn = 1\noperations = [\"Sym(\"]\n[[f]]\nexponent = [1]\n"); }),
            Errc::Parse);
  EXPECT_EQ(error_code_of([] { parse_problem(R"({"p": 3, "n": 1, "f": [{"exponent": [1.5]}]})"); }), Errc::Parse);
}

TEST(Fiber, Examples) {
  auto r = cmd_fiber(fiber_problem("1"), {});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["coefficients"], ojson::parse("[[1,0],[-1,0]]"));

  r = cmd_fiber(load_problem("problems/kloosterman.toml"), {});
  EXPECT_EQ(r.report["coefficients"], ojson::parse("[[1,0],[-1,0],[3,0]]"));
  EXPECT_EQ(r.report["newton_slopes"], ojson::parse(R"(["0","1"])"));
  EXPECT_EQ(r.report["dominance"]["verdict"], "Pass");
  EXPECT_EQ(r.report["newton_polygon"], r.report["hodge_polygon"]);
  ASSERT_EQ(r.csv.size(), 6u);
  EXPECT_EQ(render_csv(r.csv).rfind("source,polygon,x,y\nfiber,newton,0,0\nfiber,newton,1,0\n", 0), 0u);

  r = cmd_fiber(fiber_problem("3"), {});
  EXPECT_EQ(r.exit_code, kExitValidation);
  EXPECT_EQ(r.report["verdict"], "Degenerate");
  EXPECT_EQ(r.report["nondegeneracy"]["face_points"], ojson::parse("[[3]]"));
}

TEST(Fiber, SpecializedLambda) {
  const auto pr = load_problem("problems/cubic_torus.toml");
  RunOptions opt;
  opt.lambda = std::vector<Elem>{1};
  const auto r = cmd_fiber(pr, opt);
  EXPECT_EQ(r.report["coefficients"], ojson::parse("[[1],[1],[0],[-2]]"));
  EXPECT_EQ(r.report["dominance"]["verdict"], "Pass");
}

TEST(Analyze, CubicFamily) {
  const auto r = cmd_analyze(load_problem("problems/cubic_torus.toml"), {});
  EXPECT_EQ(r.report["delta"]["n_factorial_volume"], 3);
  EXPECT_EQ(r.report["delta"]["w_delta"], "1/3");
  EXPECT_EQ(r.report["gamma"]["volume"], "3/2");
  const auto& sym = r.report["operations"][0];
  EXPECT_EQ(sym["degree_window"]["hi"], "9/2");
  EXPECT_EQ(sym["degree_window"]["hi_floor"], 4);
  EXPECT_EQ(sym["total_degree"]["floor"], 180);
  EXPECT_EQ(sym["total_degree"]["anchor"], "torus.total_degree");
}

TEST(Family, DeterministicAcrossThreads) {
  const auto pr = load_problem("problems/cubic_torus.toml");
  RunOptions one, four;
  four.threads = 4;
  EXPECT_EQ(cmd_family(pr, one).report.dump(), cmd_family(pr, four).report.dump());
}

TEST(Family, OracleFaultInjection) {
  const auto pr = load_problem("problems/linear_affine.toml");
  RunOptions opt;
  opt.inject_oracle_fault = true;
  const auto r = cmd_family(pr, opt);
  EXPECT_EQ(r.exit_code, kExitCheckFail);
  const auto& tensor = r.report["operations"][1];
  EXPECT_EQ(tensor["operation"], "TensorPow(2)");
  EXPECT_EQ(tensor["oracle"]["verdict"], "Fail");
  EXPECT_TRUE(tensor["oracle"].contains("first_difference"));

  const auto clean = cmd_family(pr, {});
  EXPECT_EQ(clean.exit_code, kExitOk);
  EXPECT_EQ(clean.report["operations"][1]["oracle"]["verdict"], "Pass");
}

TEST(Family, BudgetAbort) {
  const auto pr = load_problem("problems/cubic_torus.toml");
  RunOptions opt;
  opt.budget_seconds = 1e-6;
  EXPECT_EQ(error_code_of([&] { cmd_family(pr, opt); }), Errc::BudgetExceeded);
}

TEST(Binary, ExitCodesAndFiles) {
  if (g_cli.empty()) GTEST_SKIP() << "binary path not given";
  const std::string out = ::testing::TempDir() + "toricfam_out.json";
  const std::string csv = ::testing::TempDir() + "toricfam_out.csv";
  EXPECT_EQ(run_cli("fiber --input problems/kloosterman.toml --out " + out + " --csv " + csv), 0);
  EXPECT_EQ(ojson::parse(read_file(out))["coefficients"], ojson::parse("[[1,0],[-1,0],[3,0]]"));
  EXPECT_EQ(read_file(csv).rfind("source,polygon,x,y\n", 0), 0u);
  EXPECT_EQ(run_cli("selftest"), 0);
  EXPECT_EQ(run_cli("analyze --input does/not/exist.toml"), 3);
  EXPECT_EQ(run_cli("family --input problems/cubic_torus.toml --budget-seconds 0.000001"), 4);
  EXPECT_EQ(run_cli("family --input problems/linear_affine.toml --inject-oracle-fault --format text"), 2);
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  if (argc > 1) g_cli = argv[1];
  return RUN_ALL_TESTS();
}
