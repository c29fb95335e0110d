#include "extgev/report.hpp"
#include "extgev/signal_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace extgev {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("extgev_io_" + name); }

TEST(SignalJson, RoundTripIsExact) {
  const auto s = sample(AnalyticFunction::hermite(3), default_axis());
  const auto back = signal_from_json(json::parse(to_json(s).dump()));
  EXPECT_EQ(back.axis, s.axis);
  EXPECT_EQ(back.values, s.values);
}

TEST(SignalJson, SchemaViolations) {
  EXPECT_THROW(signal_from_json(json::parse(R"({"values": []})")), std::invalid_argument);
  EXPECT_THROW(signal_from_json(json::parse(R"({"axis": {"center": 0, "step": 1, "count": 4},
                                               "values": [[1, 0], [0, 0]]})")),
               std::invalid_argument);
  EXPECT_THROW(signal_from_json(json::parse(R"({"axis": {"center": 0, "step": 1, "count": 2},
                                               "values": [[1, 0, 3], [0, 0]]})")),
               std::invalid_argument);
  EXPECT_THROW(signal_from_json(json::parse(R"({"axis": {"center": 0, "step": -1, "count": 2},
                                               "values": [[1, 0], [0, 0]]})")),
               std::invalid_argument);
}

TEST(SignalFile, MissingAndMalformed) {
  EXPECT_THROW(read_signal(scratch("does_not_exist.json")), IoError);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_THROW(read_signal(bad), std::invalid_argument);
  fs::remove(bad);
}

TEST(SignalFile, ShippedFixture) {
  const auto s = read_signal(fs::path(EXTGEV_SOURCE_DIR) / "fixtures" / "unit_gaussian.json");
  EXPECT_EQ(s.axis, default_axis());
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  EXPECT_LE((s.values - sample(AnalyticFunction::unit_gaussian(), default_axis()).values).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(TfrExport, JsonAndCsvShapes) {
  const auto s = sample(AnalyticFunction::unit_gaussian(), default_axis());
  PhaseSpaceGrid grid{Axis{0.0, 0.0625, 4}, Axis{0.0, 0.125, 3}};
  const auto r = stft(Evaluator(s), Evaluator(s), grid, Method::reference);
  const json j = to_json(r);
  EXPECT_EQ(j.at("kind"), "stft");
  EXPECT_EQ(j.at("values").size(), 12u);
  EXPECT_EQ(j.at("quadrature").at("method"), "reference");
  EXPECT_EQ(j.at("axes").at("omega").at("count"), 3);

  std::ostringstream os;
  write_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,omega,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 12);
}

TEST(Report, PassIsConjunctionAndAnchorDefaults) {
  VerificationReport rep;
  rep.suite = "demo";
  EXPECT_TRUE(rep.pass());
  rep.add(CheckRecord{"a", "g", "", "x=1", 0.0, 0.0, 1e-12, true});
  EXPECT_EQ(rep.records.back().anchor, "plumbing");
  EXPECT_TRUE(rep.pass());
  rep.add(CheckRecord{"b", "g", "identity", "x=2", 1.0, 0.0, 1e-12, false});
  EXPECT_FALSE(rep.pass());
  const json j = to_json(rep);
  EXPECT_EQ(j.at("pass"), false);
  EXPECT_EQ(j.at("records").size(), 2u);
  EXPECT_EQ(j.at("records")[0].at("inputs_digest"), digest("x=1"));
}

TEST(Report, FloatFormatting) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(std::numbers::pi)), std::numbers::pi);
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  const json j = to_json(CheckRecord{"c", "g", "a", "", std::numeric_limits<double>::infinity(), 0, 0, false});
  EXPECT_TRUE(j.at("measured").is_string());
}

TEST(Report, DigestIsStable) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_NE(digest("a"), digest("b"));
  EXPECT_EQ(digest("tau=1"), digest("tau=1"));
}

}  // namespace
}  // namespace extgev
