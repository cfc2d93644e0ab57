#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fmi/cli.hpp"

namespace fmi {
namespace {

using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "fmi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path TempFile(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fmi_cli_test_" + name);
}

TEST(Cli, GenIsDeterministic) {
  const CliRun a = Invoke({"gen", "--problem", "np", "--n", "3", "--seed", "11"});
  const CliRun b = Invoke({"gen", "--problem", "np", "--n", "3", "--seed", "11"});
  const CliRun c = Invoke({"gen", "--problem", "np", "--n", "3", "--seed", "12"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, GenCheckPipelinePasses) {
  for (const char* kind : {"np", "hamburger"}) {
    for (int seed = 0; seed < 3; ++seed) {
      const CliRun gen = Invoke({"gen", "--problem", kind, "--n", "3", "--seed", std::to_string(seed)});
      ASSERT_EQ(gen.code, 0);
      const CliRun check = Invoke({"check", "-", "--seed", "1"}, gen.out);
      EXPECT_EQ(check.code, 0) << kind << " seed " << seed << "\n" << check.out << check.err;
      const json reports = json::parse(check.out);
      ASSERT_TRUE(reports.is_array());
      for (const auto& r : reports) EXPECT_TRUE(r.at("verdict").get<bool>()) << r.dump();
      const CliRun again = Invoke({"check", "-", "--seed", "1"}, gen.out);
      EXPECT_EQ(again.out, check.out);
    }
  }
}

TEST(Cli, CorruptedValueFailsWithWitness) {
  const CliRun gen = Invoke({"gen", "--problem", "np", "--n", "3", "--seed", "4"});
  json bundle = json::parse(gen.out);
  auto& values = bundle.at("problem").at("values");
  values[0]["re"] = values[0]["re"].get<double>() + 1.0;
  const CliRun check = Invoke({"check", "-"}, bundle.dump());
  EXPECT_EQ(check.code, 1);
  bool witnessed = false;
  for (const auto& r : json::parse(check.out)) {
    if (r.at("check_name") == "np.fmi_psd") {
      EXPECT_FALSE(r.at("verdict").get<bool>());
      witnessed = !r.at("witness_point").is_null();
    }
  }
  EXPECT_TRUE(witnessed);
}

TEST(Cli, SeparateFilesAndTextReport) {
  const auto problem = TempFile("problem.json");
  const auto measure = TempFile("measure.json");
  const CliRun gen = Invoke({"gen", "--problem", "hamburger", "--n", "2", "--seed", "9",
                          "--problem-out", problem.string(), "--measure-out", measure.string()});
  ASSERT_EQ(gen.code, 0);
  const CliRun text = Invoke({"check", problem.string(), measure.string(), "--report", "text"});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("PASS hamburger.fmi_psd"), std::string::npos);
  EXPECT_EQ(text.out.find("FAIL"), std::string::npos);
  const CliRun extract = Invoke({"extract", problem.string(), measure.string()});
  EXPECT_EQ(extract.code, 0);
  EXPECT_NEAR(json::parse(extract.out).at("rho").get<double>(), 0.0, 1e-9);
  std::filesystem::remove(problem);
  std::filesystem::remove(measure);
}

TEST(Cli, ExtractReportsSurplus) {
  const CliRun gen = Invoke({"gen", "--problem", "hamburger", "--n", "2", "--surplus", "2",
                          "--seed", "3"});
  const CliRun extract = Invoke({"extract", "-"}, gen.out);
  EXPECT_EQ(extract.code, 0);
  EXPECT_NEAR(json::parse(extract.out).at("rho").get<double>(), 2.0, 1e-8);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, 2);
  EXPECT_EQ(Invoke({"bogus"}).code, 2);
  EXPECT_EQ(Invoke({"check", "/nonexistent/problem.json", "/nonexistent/m.json"}).code, 2);
  EXPECT_EQ(Invoke({"check", "-"}, "{not json").code, 2);
  EXPECT_EQ(Invoke({"gen", "--problem", "np", "--n", "0"}).code, 2);
  EXPECT_EQ(Invoke({"identities", "--problem", "np", "--tol", "-1"}).code, 2);
  EXPECT_EQ(Invoke({"--help"}).code, 0);

  const json np = json::parse(Invoke({"gen", "--problem", "np", "--seed", "1"}).out);
  const json h = json::parse(Invoke({"gen", "--problem", "hamburger", "--seed", "1"}).out);
  const json mismatched = {{"problem", np.at("problem")}, {"measure", h.at("measure")}};
  const CliRun mismatch = Invoke({"check", "-"}, mismatched.dump());
  EXPECT_EQ(mismatch.code, 2);
  EXPECT_FALSE(mismatch.err.empty());
  EXPECT_EQ(Invoke({"extract", "-"}, np.dump()).code, 2);
  EXPECT_EQ(Invoke({"check", "-"}, np.at("problem").dump()).code, 2);
}

TEST(Cli, IdentitiesAndNegativeControl) {
  for (const char* kind : {"np", "hamburger"}) {
    EXPECT_EQ(Invoke({"identities", "--problem", kind, "--trials", "5", "--seed", "2"}).code, 0);
    const CliRun broken =
        Invoke({"identities", "--problem", kind, "--trials", "5", "--seed", "2", "--break-fi"});
    EXPECT_EQ(broken.code, 1) << kind;
  }
}

TEST(Cli, SeedFallsBackToEnvironment) {
  const CliRun explicit_seed = Invoke({"gen", "--problem", "hamburger", "--seed", "42"});
  ::setenv("FMI_SEED", "42", 1);
  const CliRun from_env = Invoke({"gen", "--problem", "hamburger"});
  ::setenv("FMI_SEED", "abc", 1);
  const CliRun bad_env = Invoke({"gen", "--problem", "hamburger"});
  ::unsetenv("FMI_SEED");
  const CliRun zero = Invoke({"gen", "--problem", "hamburger"});
  const CliRun seed_zero = Invoke({"gen", "--problem", "hamburger", "--seed", "0"});
  EXPECT_EQ(from_env.out, explicit_seed.out);
  EXPECT_EQ(bad_env.code, 2);
  EXPECT_EQ(zero.out, seed_zero.out);
}

}  // namespace
}  // namespace fmi
