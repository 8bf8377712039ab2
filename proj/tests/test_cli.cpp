#include "siegel/cli.hpp"
#include "siegel/stats.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace siegel;
using io::Json;
namespace fs = std::filesystem;

namespace {

Json load(const std::string& name) {
  std::ifstream in(fs::path(SIEGEL_CONFIG_DIR) / name);
  return Json::parse(in);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "siegel_cli_test" / name;
  fs::remove_all(p);
  return p;
}

Json report(const fs::path& dir) {
  std::ifstream in(dir / "report.json");
  return Json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Stats, RanksAndCorrelations) {
  EXPECT_EQ(stats::ranks({3.0, 1.0, 2.0, 1.0}), (std::vector<double>{4.0, 1.5, 3.0, 1.5}));
  EXPECT_NEAR(stats::pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(stats::pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15);
  // Monotone but nonlinear.
  EXPECT_NEAR(stats::spearman({1, 2, 3, 4}, {1, 8, 27, 64}), 1.0, 1e-15);
  EXPECT_NEAR(stats::spearman({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}), 0.8, 1e-12);
}

TEST(Report, FullPrecisionNumbers) {
  EXPECT_EQ(io::format_double(1.0), "1.0");
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::format_double(kPi)), kPi);
  const Json j = {{"a", kInf}, {"b", {1.5, -2.0}}};
  const std::string s = io::dump17(j);
  EXPECT_NE(s.find("\"inf\""), std::string::npos);
  EXPECT_NE(s.find("[1.5, -2.0]"), std::string::npos);
  EXPECT_EQ(Json::parse(s).at("b").at(0).get<double>(), 1.5);
}

TEST(JsonIo, StructureAndFamilyRoundTrip) {
  const auto s = io::structure_from(load("construct-sampling-family.json").at("structure"));
  EXPECT_EQ(s.n(), 1);
  EXPECT_EQ(s.m(), 1);
  const Json params = load("construct-sampling-family.json").at("params");
  Json certs;
  const auto f = cli::detail::family_from_params(s, params, "params.", certs);
  const auto g = io::family_from(s, Json::parse(io::dump17(io::to_json(f))));
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(g.points[i].zeta, f.points[i].zeta);
    EXPECT_EQ(g.points[i].z, f.points[i].z);
    EXPECT_EQ(g.x_index[i], f.x_index[i]);
  }
  EXPECT_EQ(g.x_step, f.x_step);
  EXPECT_EQ(g.construction_tag, f.construction_tag);
}

TEST(JsonIo, MissingFieldIsNamed) {
  Json j = {{"n", 1}};
  try {
    io::structure_from(j);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("'structure.m'"), std::string::npos) << e.what();
  }
}

TEST(Cli, WksConfigSucceeds) {
  const auto out = scratch("wks");
  EXPECT_EQ(cli::run("verify-1d", load("verify-1d-wks.json"), out), 0);
  const Json r = report(out);
  EXPECT_EQ(r.at("verdicts").at(0).at("verdict"), "wks_isometry_verified");
  EXPECT_LE(r.at("statistics").at("frame_ratio_1d").at("max_deviation").get<double>(), 1e-4);
  EXPECT_TRUE(fs::exists(out / "frame_ratios.csv"));
  EXPECT_TRUE(r.at("provenance").contains("timestamp"));
}

TEST(Cli, MissingFieldExitsOne) {
  Json c = load("construct-sampling-family.json");
  c["structure"] = {{"n", 1}};
  std::ostringstream err;
  EXPECT_EQ(cli::run("construct-sampling-family", c, scratch("missing"), std::nullopt, err), 1);
  EXPECT_NE(err.str().find("structure.m"), std::string::npos) << err.str();

  std::ostringstream err2;
  EXPECT_EQ(cli::run("verify-1d", load("construct-sampling-family.json"), scratch("mismatch"), std::nullopt, err2), 1);
  EXPECT_EQ(cli::run("no-such-task", Json::object(), scratch("unknown"), std::nullopt, err2), 1);
  EXPECT_EQ(cli::run_file("verify-1d", "/nonexistent/config.json", scratch("nofile"), std::nullopt, err2), 1);
}

TEST(Cli, NegativeVerdictsExitTwo) {
  const auto half = scratch("half");
  EXPECT_EQ(cli::run("carleson-check", load("carleson-check-half-line.json"), half), 2);
  EXPECT_EQ(report(half).at("verdicts").at(0).at("verdict"), "fails");
  EXPECT_EQ(cli::run("carleson-check", load("carleson-check-line.json"), scratch("line")), 0);

  const auto dil = scratch("dilated");
  EXPECT_EQ(cli::run("construct-sampling-family", load("construct-sampling-family-dilated.json"), dil), 2);
  const Json r = report(dil);
  EXPECT_FALSE(r.at("certificates").at("hypothesis").at("holds").get<bool>());
  EXPECT_GT(r.at("certificates").at("hypothesis").at("max_ratio").get<double>(), 1.0);
}

TEST(Cli, DeterministicApartFromTimestamp) {
  for (const char* name : {"verify-1d-frame.json", "density-bound.json"}) {
    const Json c = load(name);
    const std::string task = c.at("task");
    const auto a = scratch(std::string("det_a_") + name), b = scratch(std::string("det_b_") + name);
    ASSERT_EQ(cli::run(task, c, a), 0);
    ASSERT_EQ(cli::run(task, c, b), 0);
    Json ra = report(a), rb = report(b);
    ra["provenance"].erase("timestamp");
    rb["provenance"].erase("timestamp");
    EXPECT_EQ(io::dump17(ra), io::dump17(rb)) << name;
    for (const auto& f : ra.at("files")) EXPECT_EQ(slurp(a / f.get<std::string>()), slurp(b / f.get<std::string>()));
  }
}

TEST(Cli, SeedOverrideChangesEnsemble) {
  const Json c = load("verify-1d-frame.json");
  const auto a = scratch("seed_a"), b = scratch("seed_b");
  ASSERT_EQ(cli::run("verify-1d", c, a), 0);
  ASSERT_EQ(cli::run("verify-1d", c, b, 99), 0);
  EXPECT_EQ(report(b).at("provenance").at("seed").get<std::uint64_t>(), 99u);
  EXPECT_NE(report(a).at("statistics").at("frame_ratio_1d").at("ratios"),
            report(b).at("statistics").at("frame_ratio_1d").at("ratios"));
}

TEST(Cli, AllShippedConfigsRun) {
  for (const auto& e : fs::directory_iterator(SIEGEL_CONFIG_DIR)) {
    const Json c = Json::parse(std::ifstream(e.path()));
    const int code = cli::run(c.at("task"), c, scratch("all_" + e.path().stem().string()));
    EXPECT_TRUE(code == 0 || code == 2) << e.path();
  }
}

TEST(Cli, LatticeOutputRoundTrips) {
  const auto out = scratch("lattice");
  ASSERT_EQ(cli::run("build-lattice", load("build-lattice.json"), out), 0);
  const Json l = Json::parse(std::ifstream(out / "lattice.json"));
  EXPECT_EQ(l.at("points").size(), report(out).at("statistics").at("lattice").at("points").get<std::size_t>());
}
