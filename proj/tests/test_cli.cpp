#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "report.hpp"

using bundlekit::report::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args)
{
  std::string cmd = std::string(BUNDLEKIT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name)
{
  auto d = std::filesystem::temp_directory_path() / ("bundlekit_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d / name;
}

} // namespace

TEST(Cli, DefaultInstancePasses)
{
  auto r = run("construct -p 2 -k 1 -l 1 -d 1");
  ASSERT_EQ(r.exit_code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["status"], "pass");
  for (auto& c : j["claims"]) EXPECT_EQ(c["status"], "pass") << c["claim"];
  EXPECT_EQ(j["chern"]["c1"], -7);
  EXPECT_EQ(j["chern"]["c2"], 16);
  EXPECT_EQ(j["chern"]["discriminant"], -15);
  EXPECT_EQ(j["lemmas"]["extension"]["rank"], 2);
}

TEST(Cli, InvalidParametersExitTwo)
{
  std::string cmd = std::string(BUNDLEKIT_CLI) + " construct -p 2 -k 1 -l 1 -d 9 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string err;
  std::array<char, 512> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) err.append(buf.data(), n);
  int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 2);
  EXPECT_NE(err.find("4pkl"), std::string::npos) << err;
  EXPECT_EQ(run("construct -p 4").exit_code, 2);
  EXPECT_EQ(run("construct --nonsense").exit_code, 2);
  EXPECT_EQ(run("cohomology --window 3..1").exit_code, 2);
}

TEST(Cli, ReportsAreDeterministic)
{
  auto a = run("construct"), b = run("construct");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  auto c = run("construct --seed 7"), d = run("construct --seed 7");
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, GoldenReports)
{
  const std::filesystem::path golden(BUNDLEKIT_GOLDEN);
  EXPECT_EQ(run("construct -p 2 -k 1 -l 1 -d 1").out, slurp(golden / "construct_2_1_1_1.json"));
  EXPECT_EQ(run("construct -p 3 -k 1 -l 2 -d 1").out, slurp(golden / "construct_3_1_2_1.json"));
}

TEST(Cli, JsonRoundTrips)
{
  auto r = run("construct");
  auto j = json::parse(r.out);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(Cli, TextFormatHasTablesAndChern)
{
  auto r = run("construct --format text");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("chern: c1 = -7, c2 = 16"), std::string::npos);
  EXPECT_NE(r.out.find("cohomology of E"), std::string::npos);
  EXPECT_NE(r.out.find("transfer"), std::string::npos);
}

TEST(Cli, VerifySubsetSkipsTheRest)
{
  auto r = run("verify --claims 1,2");
  ASSERT_EQ(r.exit_code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["claims"][0]["status"], "pass");
  EXPECT_EQ(j["claims"][1]["status"], "pass");
  for (int i = 2; i < 10; ++i) EXPECT_EQ(j["claims"][i]["status"], "skipped");
  EXPECT_FALSE(j.contains("chern"));
}

TEST(Cli, ConfigFileIsOverriddenByFlags)
{
  auto cfg = scratch("run.toml");
  std::ofstream(cfg) << "p = 3\nl = 2\n";
  auto j = json::parse(run("--config " + cfg.string() + " chern").out);
  EXPECT_EQ(j["params"]["p"], 3);
  EXPECT_EQ(j["chern"]["c1"], -13);
  auto k = json::parse(run("--config " + cfg.string() + " chern -p 2 -l 1").out);
  EXPECT_EQ(k["params"]["p"], 2);
  EXPECT_EQ(k["chern"]["c2"], 16);
}

TEST(Cli, ScanAndCohomology)
{
  auto s = json::parse(run("scan --p 3 --s-max 3").out);
  EXPECT_EQ(s["fit"]["alpha"], "36");
  auto c = run("cohomology --module E --window -1..2");
  ASSERT_EQ(c.exit_code, 0);
  auto j = json::parse(c.out);
  EXPECT_EQ(j["cohomology"]["E"]["table"]["h1"], json::parse("[0, 0, 0, 1]"));
  EXPECT_EQ(j["cohomology"]["E"]["witness"]["l"], 2);
}

TEST(Cli, DumpAndOutputFiles)
{
  auto dir = scratch("dump");
  auto out = scratch("report.json");
  auto r = run("construct --dump-dir " + dir.string() + " -o " + out.string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(out))["status"], "pass");
  auto m = slurp(dir / "M.txt");
  EXPECT_EQ(m.rfind("# ring x y z t over F_2\n# generator degrees", 0), 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "E.txt"));
  EXPECT_EQ(run("construct -o /nonexistent-dir/report.json").exit_code, 2);
}

TEST(Report, FailingClaimCarriesWitness)
{
  bundlekit::PipelineResult r;
  r.params = bundlekit::validate_params(2, 1, 1, 1);
  bundlekit::StageRecord s;
  s.name = "assembly";
  s.status = bundlekit::Status::fail;
  bundlekit::Check c{"claim9.generation", "generation", false, {}};
  c.add("krull dimension of cokernel", 1).add("witness generator", 2).add("witness coefficients", "[0, 0, 1]");
  s.checks.push_back(c);
  s.error = "check failed";
  r.stages.push_back(s);
  auto j = bundlekit::report::build(r, {});
  EXPECT_EQ(j["status"], "fail");
  const auto& c9 = j["claims"][8];
  EXPECT_EQ(c9["status"], "fail");
  EXPECT_EQ(c9["witness"]["details"]["witness coefficients"], json::parse("[0, 0, 1]"));
  // claims owned by a failed stage without checks still get a witness
  EXPECT_EQ(j["claims"][6]["status"], "fail");
  EXPECT_TRUE(j["claims"][6].contains("witness"));
}
