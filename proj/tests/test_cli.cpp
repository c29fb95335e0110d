// Drives the built extgev executable through the shell and checks exit codes and output.

#include <json.hpp>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EXTGEV_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture() { return (fs::path(EXTGEV_SOURCE_DIR) / "fixtures" / "unit_gaussian.json").string(); }

std::string tmp(const std::string& name) { return (fs::temp_directory_path() / ("extgev_cli_" + name)).string(); }

// Value of the CSV row with x = 0 and omega = 0.
std::pair<double, double> origin_value(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double x, w, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &w, &re, &im) == 4 && x == 0.0 && w == 0.0) return {re, im};
  }
  return {NAN, NAN};
}

TEST(CliWeights, CsvTable) {
  const auto r = run("weights --tau 1 --sigma 2 --pmax 50 --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "p,log_m,log_ratio,log_term_bound");
  int rows = 0;
  double log_m2 = NAN;
  while (std::getline(in, line)) {
    if (rows == 2) log_m2 = std::stod(line.substr(line.find(',') + 1));
    ++rows;
  }
  EXPECT_EQ(rows, 51);
  EXPECT_NEAR(log_m2, 4.0 * std::log(2.0), 1e-15);
}

TEST(CliWeights, JsonHasConditions) {
  const auto r = run("weights --tau 1 --sigma 2 --pmax 50 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("table").size(), 51u);
  EXPECT_TRUE(j.at("conditions").at("all_pass").get<bool>());
}

TEST(CliWeights, ValidationErrors) {
  EXPECT_EQ(run("weights --tau 0 --sigma 2").code, 2);
  EXPECT_EQ(run("weights --tau 1 --sigma 2 --pmax 2").code, 2);
  EXPECT_EQ(run("weights --tau 1 --sigma 2 --format xml").code, 2);
  EXPECT_EQ(run("weights --sigma 2").code, 2);
}

TEST(CliTfr, FixtureValues) {
  const auto w = run("tfr --kind wigner --signal " + fixture() + " --format csv");
  ASSERT_EQ(w.code, 0);
  const auto [wr, wi] = origin_value(w.out);
  EXPECT_NEAR(wr, 2.0, 1e-12);
  EXPECT_NEAR(wi, 0.0, 1e-12);
  const auto s = run("tfr --kind stft --signal " + fixture() + " --window " + fixture() + " --format csv");
  ASSERT_EQ(s.code, 0);
  EXPECT_NEAR(origin_value(s.out).first, 1.0, 1e-12);
}

TEST(CliTfr, JsonOutputFile) {
  const auto out = tmp("gr.json");
  const auto r = run("tfr --kind gr --signal " + fixture() +
                     " --x-count 8 --w-count 8 --mode reference --out " + out);
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  const auto j = json::parse(in);
  EXPECT_EQ(j.at("kind"), "grossmann-royer");
  EXPECT_EQ(j.at("values").size(), 64u);
  fs::remove(out);
}

TEST(CliTfr, Errors) {
  EXPECT_EQ(run("tfr --signal " + tmp("missing.json")).code, 2);
  const auto bad = tmp("bad_signal.json");
  std::ofstream(bad) << R"({"axis": {"center": 0, "step": 1, "count": 3}, "values": [[1, 0]]})";
  EXPECT_EQ(run("tfr --signal " + bad).code, 2);
  fs::remove(bad);
  EXPECT_EQ(run("tfr --signal " + fixture() + " --x-step 0.03").code, 3);
  EXPECT_EQ(run("tfr --signal " + fixture() + " --kind born-jordan").code, 2);
}

TEST(CliDeterminism, ByteIdenticalOutputs) {
  const std::string args = "tfr --kind ambiguity --signal " + fixture() + " --format csv";
  EXPECT_EQ(run(args).out, run(args).out);
  const std::string fit = "fit --family hermite --k 2 --sigma 2 --order 6";
  EXPECT_EQ(run(fit).out, run(fit).out);
}

TEST(CliLambert, Table) {
  const auto r = run("lambert --x 0 2.718281828459045");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n0,0,"), std::string::npos);
  EXPECT_NE(r.out.find("2.7182818284590451,1,"), std::string::npos);
  EXPECT_EQ(run("lambert --x -1").code, 2);
}

TEST(CliAssoc, Values) {
  const auto r = run("assoc --tau 1 --sigma 2 --x 0.5 4 --komatsu 10 --sandwich");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.5,0,0,0"), std::string::npos);
  EXPECT_NE(r.out.find("4,1.3862943611198906,1,0"), std::string::npos);
  EXPECT_NE(r.out.find("validation_violations"), std::string::npos);
}

TEST(CliFit, MembershipReport) {
  const auto r = run("fit --family unit-gaussian --sigma 2 --order 6");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j.contains("joint"));
  EXPECT_TRUE(j.contains("fourier"));
  EXPECT_EQ(run("fit --family hermite --k 1 --order 3").code, 2);
  EXPECT_EQ(run("fit --family sinc").code, 2);
}

TEST(CliVerify, LambertSuite) {
  const auto out = tmp("lambert.json");
  const auto r = run("verify --suite lambert --json " + out);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(out);
  const auto j = json::parse(in);
  EXPECT_TRUE(j.at("pass").get<bool>());
  bool has_e = false;
  for (const auto& rec : j.at("records")) {
    EXPECT_FALSE(rec.at("anchor").get<std::string>().empty());
    has_e = has_e || rec.at("name").get<std::string>().find("W(e)") != std::string::npos;
  }
  EXPECT_TRUE(has_e);
  fs::remove(out);
}

TEST(CliVerify, UnknownSuite) { EXPECT_EQ(run("verify --suite everything").code, 2); }

}  // namespace
