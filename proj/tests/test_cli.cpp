#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef AFACT_CLI_PATH
#error "AFACT_CLI_PATH must name the afact_cli binary"
#endif

using json = nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(AFACT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("afact_cli_test_" + name);
}

}  // namespace

TEST(Cli, HeatPassesWithSchema) {
  auto r = cli("--command heat");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "afact-report/1");
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_TRUE(j.contains("version"));
  EXPECT_EQ(j["parameters"]["command"], "heat");
  EXPECT_LE(j["results"]["sup_error"].get<double>(), 1e-10);
}

TEST(Cli, ReportsAreDeterministic) {
  auto a = cli("--command factorize --eps 0.25");
  auto b = cli("--command factorize --eps 0.25");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, DivergentFactorizationFails) {
  auto r = cli("--command factorize --eps 2");
  EXPECT_EQ(r.status, 1);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "FAIL");
  EXPECT_EQ(j["error"]["code"], "DIVERGENT");
}

TEST(Cli, UnknownCommandIsConfigError) { EXPECT_EQ(cli("--command nope").status, 2); }

TEST(Cli, BadGridIsConfigError) {
  auto r = cli("--command heat --grid-N 1000");
  EXPECT_EQ(r.status, 2);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "CONFIG_ERROR");
  EXPECT_EQ(j["error"]["code"], "CONFIG");
}

TEST(Cli, UnknownVectorIsConfigError) { EXPECT_EQ(cli("--command factorize --vector spiral").status, 2); }

TEST(Cli, ConfigFileAndFlagPrecedence) {
  auto path = temp_file("cfg.ini");
  {
    std::ofstream f(path);
    f << "command=heat\ntol=1e-30\n";
  }
  EXPECT_EQ(cli("--config " + path.string()).status, 1);
  EXPECT_EQ(cli("--config " + path.string() + " --tol 1e-8").status, 0);
  std::filesystem::remove(path);
}

TEST(Cli, KernelCsv) {
  auto path = temp_file("kernel.csv");
  auto r = cli("--command kernel --symbol heat --grid-N 1024 --grid-L 32 --format csv --out " + path.string());
  ASSERT_EQ(r.status, 0);
  std::ifstream f(path);
  std::string l1, l2, row;
  std::getline(f, l1);
  std::getline(f, l2);
  EXPECT_EQ(l1, "# afact-kernel-csv/1");
  EXPECT_EQ(l2, "x,re,im,noise_floor");
  int rows = 0;
  while (std::getline(f, row)) ++rows;
  EXPECT_EQ(rows, 1024);
  std::filesystem::remove(path);
}

TEST(Cli, CsvRejectedForScalarCommands) { EXPECT_EQ(cli("--command factorize --format csv").status, 2); }

TEST(Cli, DecayCertificateForAlpha) {
  auto r = cli("--command decay --symbol alpha --eps 0.1 --n-list 1,2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["results"]["certificate"]["verdict"], "FINITE");
}

TEST(Cli, IdentitySingleEps) {
  auto r = cli("--command identity --eps 0.5 --seed 3");
  auto j = json::parse(r.out);
  ASSERT_EQ(j["results"]["sweeps"].size(), 1u);
  EXPECT_EQ(j["results"]["sweeps"][0]["points"], 1000);
  EXPECT_EQ(r.status, j["status"] == "PASS" ? 0 : 1);
}

TEST(Cli, Hyper) {
  auto r = cli("--command strongfact-hyper --c 0.25 --R 0.75");
  EXPECT_EQ(r.status, 0);
  EXPECT_LE(json::parse(r.out)["results"]["error"].get<double>(), 1e-4);
}

TEST(Cli, TestfnZero) {
  auto r = cli("--command strongfact-testfn --vector zero --m 6");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["results"]["error"].get<double>(), 0.0);
}

TEST(Cli, ReportAllEmptyMatrix) {
  auto r = cli("--command report-all --criteria none");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(json::parse(r.out)["results"]["criteria"].empty());
}

TEST(Cli, ReportAllControlFails) {
  auto r = cli("--command report-all --criteria none --control");
  EXPECT_EQ(r.status, 1);
  auto j = json::parse(r.out);
  ASSERT_EQ(j["results"]["criteria"].size(), 1u);
  EXPECT_EQ(j["results"]["criteria"][0]["status"], "FAIL");
}

TEST(Cli, ReportAllSubset) {
  auto r = cli("--command report-all --criteria 3,11");
  EXPECT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  ASSERT_EQ(j["results"]["criteria"].size(), 2u);
  EXPECT_FALSE(j["results"]["criteria"][0].contains("seconds"));
}

TEST(Cli, ReportAllBadIdIsConfigError) { EXPECT_EQ(cli("--command report-all --criteria 12").status, 2); }
