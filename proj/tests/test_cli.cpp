#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qrious/scanner.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QRIOUS_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qrious_cli_" + name)).string();
}

}  // namespace

TEST(Cli, CheckPasses) {
  const auto r = run("check '8,1/4,3,2' --checks landau,positivity");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["q1_value"], "140");
}

TEST(Cli, CheckUnimodalFailsWithWitness) {
  const auto r = run("check '8,1/4,3,2' --checks unimodal");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["witnesses"]["unimodal"], 9);
}

TEST(Cli, CheckLandauWitness) {
  const auto r = run("check '1,1/2' --checks landau");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["witnesses"]["landau"], "1/2");
}

TEST(Cli, Build) {
  auto r = run("build '2/1,1'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json({"1", "1"}));
  r = run("build '8,1/4,3,2' --method ratio");
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 19u);
  r = run("build '1,1/2' --method ratio");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["error"], "NonExactDivision");
  r = run("build '8,1/4,3,2' --format csv");
  EXPECT_EQ(r.out.substr(0, 21), "exponent,coefficient\n");
}

TEST(Cli, BuildToFile) {
  const auto path = temp_file("build.json");
  const auto r = run("build '4/2,2' --out " + path);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  EXPECT_EQ(nlohmann::json::parse(in), nlohmann::json({"1", "1", "2", "1", "1"}));
  std::filesystem::remove(path);
}

TEST(Cli, Threshold) {
  const auto r = run("threshold '8,1/4,3,2' --property unimodal --nmax 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["threshold"], 2);
}

TEST(Cli, DixonAndFamilies) {
  auto r = run("dixon --max 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["pass"].get<bool>());
  r = run("families list");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 9u);
}

TEST(Cli, PartitionsSmall) {
  const auto r = run("partitions --max-size 3 --grid 6");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["count"].get<std::size_t>(), j["partitions"].size());
}

TEST(Cli, ScanStreamsJsonl) {
  const auto r = run("scan --family b --m 1:4 --n 0:4 --checks landau,unimodal");
  EXPECT_EQ(r.code, 1);  // B(3,1) and B(4,1) are not unimodal
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = r.out.find('\n', pos)) != std::string::npos; ++pos) ++lines;
  EXPECT_EQ(lines, 14u);
  const auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(first["key"], "b:m=1:n=0");
}

TEST(Cli, ScanWorkersDeterministic) {
  const auto a = run("scan --family c --m 0:8 --n 0:8 --workers 1");
  const auto b = run("scan --family c --m 0:8 --n 0:8 --workers 8");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ScanToFileSummary) {
  const auto path = temp_file("scan.jsonl");
  std::filesystem::remove(path);
  auto r = run("scan --family qbinom --m 0:5 --n 0:5 --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["written"], 36);
  r = run("scan --family qbinom --m 0:5 --n 0:5 --out " + path);
  EXPECT_EQ(nlohmann::json::parse(r.out)["resumed"], 36);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileAndPrecedence) {
  const auto cfg = temp_file("config.json");
  {
    std::ofstream o(cfg);
    o << R"({"format": "plain", "threshold": {"nmax": 10, "property": "unimodal"}})";
  }
  auto r = run("--config " + cfg + " threshold '8,1/4,3,2'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
  r = run("--config " + cfg + " --format json threshold '8,1/4,3,2' --nmax 5");
  EXPECT_EQ(nlohmann::json::parse(r.out)["n_max"], 5);
  std::filesystem::remove(cfg);
}

TEST(Cli, RegistryFromEnvironment) {
  const auto reg = temp_file("reg.json");
  {
    std::ofstream o(reg);
    o << R"([{"id": 4, "label": "s", "pair": "18,1/9,6,4"}])";
  }
  auto r = run("scan --family sporadic --checks landau,positivity", "QRIOUS_REGISTRY=" + reg);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"id\":4"), std::string::npos);
  EXPECT_NE(r.out.find("chebyshev"), std::string::npos);
  {
    std::ofstream o(reg);
    o << R"([{"id": 4, "pair": "1,1/2"}])";
  }
  r = run("scan --family sporadic", "QRIOUS_REGISTRY=" + reg);
  EXPECT_EQ(r.code, 2);
  std::filesystem::remove(reg);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("check '1,x/2'").code, 2);
  EXPECT_EQ(run("check '1/2' --checks nonsense").code, 2);
  EXPECT_EQ(run("scan --family nope").code, 2);
  EXPECT_EQ(run("--format xml families list").code, 2);
  EXPECT_EQ(run("scan --family b --m x").code, 2);
  EXPECT_EQ(run("threshold '1,1/2'").code, 2);
}

TEST(Cli, JsonOutputsRoundTrip) {
  const auto r = run("scan --family b --m 4 --n 1 --emit-coeffs");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(qrious::to_json(qrious::scan_record_from_json(j)), j);
}
