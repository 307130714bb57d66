#include "commands.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace probclone::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const fs::path kFixtures = PROBCLONE_FIXTURE_DIR;

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

class ScratchDir {
 public:
  ScratchDir() {
    path_ = fs::temp_directory_path() /
            ("probclone_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

struct Spawned {
  int exit_code;
  std::string out;
};

// Runs the installed binary through the shell; stderr is discarded.
Spawned spawn(const std::string& args) {
  const std::string cmd = std::string(PROBCLONE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return {-1, {}};
  }
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
    out.append(buf.data(), n);
  }
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string build_machine_file(const ScratchDir& dir, const std::string& psi1 = "psi1_third.json") {
  const std::string path = dir.file("machine.json");
  BuildOptions o;
  o.psi0_path = fixture("psi0.json");
  o.psi1_path = fixture(psi1);
  o.machine_path = path;
  const CommandResult r = cmd_build(o);
  EXPECT_EQ(r.exit_code, 0) << r.report.dump(2);
  return path;
}

TEST(CommandsTest, FilterDemoPayload) {
  const CommandResult r = cmd_filter_demo();
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(validate_report(r.report), "");
  const json& res = r.report["results"];
  EXPECT_NEAR(res["fidelity_before"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(res["fidelity_after"].get<double>(), 0.0, 1e-12);
  EXPECT_TRUE(res["monotonicity_violated"].get<bool>());
  EXPECT_EQ(cmd_filter_demo().report, r.report);
}

TEST(CommandsTest, BuildSummarizesMachine) {
  ScratchDir dir;
  BuildOptions o{fixture("psi0.json"), fixture("psi1_third.json"), {}, {}, dir.file("m.json")};
  CommandResult r = cmd_build(o);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(r.report["results"]["eta"].get<double>(), 0.75, 1e-12);
  EXPECT_LE(r.report["results"]["unitarity_residual"].get<double>(), 1e-10);
  EXPECT_EQ(r.report["results"]["rephase_angle"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(o.machine_path));

  o.psi1_path = fixture("psi1_orthogonal.json");
  r = cmd_build(o);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report["results"]["eta"].get<double>(), 1.0);

  o.psi1_path = fixture("psi1_third_phased.json");
  r = cmd_build(o);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(r.report["results"]["rephase_angle"].get<double>(), M_PI / 4, 1e-12);
  EXPECT_NEAR(r.report["results"]["eta"].get<double>(), 0.75, 1e-10);
}

TEST(CommandsTest, BuildOverridesAndWarnings) {
  ScratchDir dir;
  BuildOptions o{fixture("psi0.json"), fixture("psi1_slightly_off.json"),
                 fixture("psi1_orthogonal.json"), {}, dir.file("m.json")};
  const CommandResult r = cmd_build(o);
  ASSERT_EQ(r.exit_code, 0) << r.report.dump(2);
  ASSERT_EQ(r.report["warnings"].size(), 1u);
  EXPECT_EQ(r.report["inputs"]["sigma"], o.sigma_path.value());
  // A sigma of |1> is fine for the construction and still verifies.
  VerifyOptions v = default_verify_options();
  v.machine_path = o.machine_path;
  EXPECT_EQ(cmd_verify(v).exit_code, 0);
}

TEST(CommandsTest, BuildErrorsHaveDistinctCodes) {
  ScratchDir dir;
  BuildOptions o{fixture("psi0.json"), fixture("malformed.json"), {}, {}, dir.file("m.json")};
  const int parse = cmd_build(o).exit_code;
  o.psi1_path = fixture("psi0.json");
  const int identical = cmd_build(o).exit_code;
  o.psi1_path = fixture("psi1_dim3.json");
  const int dimension = cmd_build(o).exit_code;
  o.psi1_path = fixture("psi1_unnormalized.json");
  const int unnormalized = cmd_build(o).exit_code;
  EXPECT_EQ(parse, PCLONE_ERR_USAGE);
  EXPECT_EQ(identical, PCLONE_ERR_DOMAIN);
  EXPECT_EQ(dimension, PCLONE_ERR_DIMENSION);
  EXPECT_EQ(unnormalized, PCLONE_ERR_USAGE);
  EXPECT_FALSE(fs::exists(o.machine_path));

  const CommandResult r = cmd_build(o);
  EXPECT_TRUE(r.report.contains("error"));
  EXPECT_EQ(r.report["status"], "usage");
}

TEST(CommandsTest, CloneReportsStatistics) {
  ScratchDir dir;
  const std::string machine = build_machine_file(dir);
  const CloneOptions o{machine, 1, 90000, 42, 1};
  const CommandResult r = cmd_clone(o);
  ASSERT_EQ(r.exit_code, 0);
  const json& res = r.report["results"];
  EXPECT_LE(std::abs(res["z_score"].get<double>()), 3.0);
  EXPECT_NEAR(res["analytic_eta"].get<double>(), 0.75, 1e-12);
  EXPECT_GE(res["mean_clone_fidelity"].get<double>(), 1 - 1e-9);
  EXPECT_EQ(cmd_clone(o).report, r.report);
  CloneOptions threaded = o;
  threaded.threads = 4;
  EXPECT_EQ(cmd_clone(threaded).report["results"], r.report["results"]);
}

TEST(CommandsTest, CloneSingleShotOfOrthogonalMachine) {
  ScratchDir dir;
  const std::string machine = build_machine_file(dir, "psi1_orthogonal.json");
  const CommandResult r = cmd_clone({machine, 0, 1, 3, 1});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report["results"]["successes"], 1);
}

TEST(CommandsTest, CloneRejectsCorruptMachine) {
  EXPECT_EQ(cmd_clone({fixture("psi0.json"), 0, 10, 1, 1}).exit_code, PCLONE_ERR_USAGE);
  EXPECT_EQ(cmd_clone({"/nonexistent", 0, 10, 1, 1}).exit_code, PCLONE_ERR_USAGE);
}

TEST(CommandsTest, BoundValues) {
  CommandResult r = cmd_bound({0.5, {}});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(r.report["results"]["universal_bound"].get<double>(), 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(r.report["results"].contains("mean_efficiency_bound"));
  r = cmd_bound({0.0, {}});
  EXPECT_EQ(r.report["results"]["universal_bound"].get<double>(), 1.0);
  r = cmd_bound({0.5, 0.0});
  EXPECT_NEAR(r.report["results"]["mean_efficiency_bound"].get<double>(), 0.5, 1e-15);
  EXPECT_EQ(cmd_bound({1.0, {}}).exit_code, PCLONE_ERR_DOMAIN);
  EXPECT_EQ(cmd_bound({0.5, 2.0}).exit_code, PCLONE_ERR_DOMAIN);
}

TEST(CommandsTest, VerifyBuiltAndGoldenMachines) {
  ScratchDir dir;
  VerifyOptions v = default_verify_options();
  v.machine_path = build_machine_file(dir);
  const CommandResult r = cmd_verify(v);
  ASSERT_EQ(r.exit_code, 0) << r.report.dump(2);
  const json& res = r.report["results"];
  EXPECT_TRUE(res["passed"].get<bool>());
  EXPECT_TRUE(res["bounds"]["saturated"].get<bool>());
  EXPECT_TRUE(res["golden_checked"].get<bool>());
  EXPECT_LE(res["golden_residual"].get<double>(), 1e-10);
  EXPECT_LE(res["unitarity_residual"].get<double>(), 1e-9);
  EXPECT_LE(res["mapping_residual"].get<double>(), 1e-9);
}

TEST(CommandsTest, VerifyFlagsPerturbedUnitary) {
  ScratchDir dir;
  const std::string machine = build_machine_file(dir);
  json doc;
  {
    std::ifstream in(machine);
    in >> doc;
  }
  auto& entry = doc["unitary"]["entries"][9][0];
  entry = entry.get<double>() + 1e-3;
  const std::string bad = dir.file("perturbed.json");
  {
    std::ofstream out(bad);
    out << doc.dump();
  }
  VerifyOptions v = default_verify_options();
  v.machine_path = bad;
  const CommandResult r = cmd_verify(v);
  EXPECT_EQ(r.exit_code, PCLONE_ERR_VERIFY);
  EXPECT_GT(r.report["results"]["unitarity_residual"].get<double>(), 1e-4);
  const std::string failed = r.report["results"]["failed_checks"];
  EXPECT_NE(failed.find("unitarity_residual"), std::string::npos);
  EXPECT_NE(r.report["error"].get<std::string>().find("unitarity_residual"), std::string::npos);
}

TEST(ReportTest, ValidateCatchesProblems) {
  json r = cmd_filter_demo().report;
  EXPECT_EQ(validate_report(r), "");
  json missing = r;
  missing.erase("generator_id");
  EXPECT_NE(validate_report(missing), "");
  json version = r;
  version["schema_version"] = 99;
  EXPECT_NE(validate_report(version), "");
  json nan = r;
  nan["results"]["x"] = std::nan("");
  EXPECT_NE(validate_report(nan).find("non-finite"), std::string::npos);
  EXPECT_THROW(read_report("{"), std::runtime_error);
  EXPECT_THROW(read_report("{}"), std::runtime_error);
}

TEST(BinaryTest, ReportsRoundTripThroughReader) {
  ScratchDir dir;
  const std::string machine = dir.file("m.json");
  const std::vector<std::string> invocations{
      "filter-demo",
      "build --psi0 " + fixture("psi0.json") + " --psi1 " + fixture("psi1_third.json") +
          " --machine " + machine,
      "clone " + machine + " --input 0 --shots 1000 --seed 5",
      "bound --overlap 0.5 --flag-overlap 0.25",
      "verify " + machine,
  };
  for (const auto& args : invocations) {
    const Spawned s = spawn(args);
    EXPECT_EQ(s.exit_code, 0) << args;
    json report;
    ASSERT_NO_THROW(report = read_report(s.out)) << args << "\n" << s.out;
    EXPECT_EQ(report["tool_version"], pclone_version());
    EXPECT_EQ(report["generator_id"], pclone_generator_id());
    // Rerunning gives the identical document.
    EXPECT_EQ(spawn(args).out, s.out) << args;
  }
}

TEST(BinaryTest, OutputFlagWritesFile) {
  ScratchDir dir;
  const std::string out = dir.file("report.json");
  const Spawned s = spawn("bound --overlap 0.25 --output " + out);
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_TRUE(s.out.empty());
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  const json report = read_report(text.str());
  EXPECT_NEAR(report["results"]["universal_bound"].get<double>(), 0.8, 1e-15);
}

TEST(BinaryTest, ExitCodes) {
  ScratchDir dir;
  const std::string machine = dir.file("m.json");
  const std::string base = "build --psi0 " + fixture("psi0.json") + " --machine " + machine;
  EXPECT_EQ(spawn("").exit_code, 1);
  EXPECT_EQ(spawn("no-such-command").exit_code, 1);
  EXPECT_EQ(spawn("--help").exit_code, 0);
  EXPECT_EQ(spawn("bound").exit_code, 1);
  EXPECT_EQ(spawn("bound --overlap abc").exit_code, 1);
  EXPECT_EQ(spawn("bound --overlap 1.5").exit_code, 2);
  EXPECT_EQ(spawn(base + " --psi1 " + fixture("malformed.json")).exit_code, 1);
  EXPECT_EQ(spawn(base + " --psi1 " + fixture("psi0.json")).exit_code, 2);
  EXPECT_EQ(spawn(base + " --psi1 " + fixture("psi1_dim3.json")).exit_code, 4);
  ASSERT_EQ(spawn(base + " --psi1 " + fixture("psi1_third.json")).exit_code, 0);
  EXPECT_EQ(spawn("clone " + machine + " --input 2 --shots 10").exit_code, 1);
  EXPECT_EQ(spawn("clone " + machine + " --shots 0").exit_code, 1);
  EXPECT_EQ(spawn("verify " + machine + " --tol-unitarity 0 --tol-mapping 0").exit_code, 3);
}

TEST(BinaryTest, ErrorReportStillParses) {
  const Spawned s = spawn("bound --overlap 1.5");
  EXPECT_EQ(s.exit_code, 2);
  const json report = read_report(s.out);
  EXPECT_EQ(report["status"], "domain");
  EXPECT_EQ(report["exit_code"], 2);
  EXPECT_TRUE(report.contains("error"));
}

}  // namespace
}  // namespace probclone::cli
