#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

const fs::path kData = TRACKEVAL_TEST_DATA;
const std::string kCli = TRACKEVAL_CLI;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("trackeval_cli_") + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  // Runs the CLI with `args`; stdout and stderr land in out/err.
  int run(const std::string& args) {
    const std::string cmd = "'" + kCli + "' " + args + " >'" + (dir / "stdout").string() + "' 2>'" +
                            (dir / "stderr").string() + "'";
    const int status = std::system(cmd.c_str());
    out = slurp(dir / "stdout");
    err = slurp(dir / "stderr");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string evaluate_args(const fs::path& report, const std::string& extra = "") const {
    return "evaluate --dataset '" + (kData / "dataset").string() + "' --results '" + (kData / "results").string() +
           "' --out '" + report.string() + "' " + extra;
  }

  fs::path dir;
  std::string out;
  std::string err;
};

}  // namespace

TEST_F(Cli, EvaluateIsByteStableAcrossRunsAndJobs) {
  ASSERT_EQ(run(evaluate_args(dir / "a.json")), 0) << err;
  ASSERT_EQ(run(evaluate_args(dir / "b.json")), 0) << err;
  ASSERT_EQ(run(evaluate_args(dir / "c.json", "--jobs 4")), 0) << err;
  const std::string a = slurp(dir / "a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.json"));
  EXPECT_EQ(a, slurp(dir / "c.json"));
  EXPECT_NE(err.find("drift/alpha: 2 of 20"), std::string::npos) << err;
}

TEST_F(Cli, TableMatchesGolden) {
  ASSERT_EQ(run(evaluate_args(dir / "r.json")), 0) << err;
  ASSERT_EQ(run("table '" + (dir / "r.json").string() + "' --metric auc_success"), 0) << err;
  EXPECT_EQ(out, slurp(kData / "golden" / "auc_success.md"));
  ASSERT_EQ(run("table '" + (dir / "r.json").string() + "' --metric success@0.5 --format csv --out '" +
                (dir / "t.csv").string() + "'"),
            0);
  EXPECT_EQ(slurp(dir / "t.csv").rfind("sequence,", 0), 0u);
}

TEST_F(Cli, TrackerSubsetAndConfigOptions) {
  ASSERT_EQ(run(evaluate_args(dir / "r.json", "--trackers perfect,drift --angle-mode wrap --comparison inclusive "
                                              "--precision-max 30 --overlap-steps 21")),
            0)
      << err;
  const std::string r = slurp(dir / "r.json");
  EXPECT_NE(r.find("\"inclusive\""), std::string::npos);
  EXPECT_NE(r.find("\"wrap\""), std::string::npos);
  EXPECT_EQ(r.find("\"twin\""), std::string::npos);
  ASSERT_EQ(run("table '" + (dir / "r.json").string() + "' --metric auc_success"), 0);
  EXPECT_NE(out.find("| Sequence | perfect | drift |"), std::string::npos) << out;
}

TEST_F(Cli, ConfigFile) {
  std::ofstream(dir / "cfg.ini") << "[evaluate]\njobs=2\nangle-mode=wrap\n";
  ASSERT_EQ(run(evaluate_args(dir / "r.json", "--config '" + (dir / "cfg.ini").string() + "'")), 0) << err;
  EXPECT_NE(slurp(dir / "r.json").find("\"wrap\""), std::string::npos);
  ASSERT_EQ(run(evaluate_args(dir / "s.json", "--config '" + (dir / "cfg.ini").string() + "' --angle-mode raw")), 0);
  EXPECT_NE(slurp(dir / "s.json").find("\"raw\""), std::string::npos);
}

TEST_F(Cli, PlotWritesSvgFiles) {
  ASSERT_EQ(run(evaluate_args(dir / "r.json")), 0) << err;
  ASSERT_EQ(run("plot '" + (dir / "r.json").string() + "' --all --average --all-kinds --out-dir '" +
                (dir / "plots").string() + "'"),
            0)
      << err;
  for (const char* name : {"alpha_precision.svg", "alpha_success.svg", "bravo_matching.svg", "average_success.svg"}) {
    EXPECT_TRUE(fs::exists(dir / "plots" / name)) << name;
  }
  EXPECT_EQ(run("plot '" + (dir / "r.json").string() + "' --sequence zulu --kind success --out-dir '" +
                (dir / "none").string() + "'"),
            1);
  EXPECT_FALSE(fs::exists(dir / "none" / "zulu_success.svg"));
}

TEST_F(Cli, DemoPrintsVerdicts) {
  ASSERT_EQ(run("demo-examples"), 0) << err;
  EXPECT_NE(out.find("verdict by center error:   Alg1 better"), std::string::npos);
  EXPECT_NE(out.find("verdict by area overlap:   Alg2 better"), std::string::npos);
  EXPECT_NE(out.find("verdict by matching score: Alg2 better"), std::string::npos);
  ASSERT_EQ(run("demo-examples --angle-mode wrap --scaled1 10,10,2,2,0.5"), 0) << err;
  EXPECT_EQ(run("demo-examples --scaled1 10,10,2,2,5"), 1);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("evaluate --dataset x"), 1);
  EXPECT_EQ(run("--help"), 0);

  // missing files
  EXPECT_EQ(run("evaluate --dataset '" + (dir / "nope").string() + "' --results '" + (kData / "results").string() +
                "' --out '" + (dir / "r.json").string() + "'"),
            2);
  EXPECT_FALSE(fs::exists(dir / "r.json"));
  EXPECT_EQ(run("table '" + (dir / "nope.json").string() + "' --metric auc_success"), 2);

  // data errors leave no report behind
  fs::create_directories(dir / "res" / "short");
  std::ofstream(dir / "res" / "short" / "alpha.txt") << "2\n";
  std::ofstream(dir / "res" / "short" / "bravo.txt") << "2\n";
  EXPECT_EQ(run("evaluate --dataset '" + (kData / "dataset").string() + "' --results '" + (dir / "res").string() +
                "' --out '" + (dir / "r.json").string() + "'"),
            3);
  EXPECT_NE(err.find("LengthMismatch"), std::string::npos) << err;
  EXPECT_FALSE(fs::exists(dir / "r.json"));

  std::ofstream(dir / "bad.json") << "{\"schema\": 1}";
  EXPECT_EQ(run("table '" + (dir / "bad.json").string() + "' --metric auc_success"), 3);

  // usage errors after a valid evaluation
  ASSERT_EQ(run(evaluate_args(dir / "r.json")), 0);
  EXPECT_EQ(run("table '" + (dir / "r.json").string() + "' --metric recall"), 1);
  EXPECT_NE(err.find("auc_success"), std::string::npos);
  EXPECT_EQ(run("table '" + (dir / "r.json").string() + "' --metric precision@20.5"), 1);
}
