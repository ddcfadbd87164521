#include "holocontact/errors.hpp"
#include "holocontact_cli/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace holocontact;
using nlohmann::json;

namespace {

cli::RunResult run_text(const std::string& text, cli::Overrides ov = {}) {
  return cli::run(cli::load_config(text, ov));
}

std::string example(const std::string& name) {
  const char* dir = std::getenv("HC_EXAMPLES_DIR");
  std::ifstream in(std::string(dir ? dir : "tools/examples") + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, IdenticalAlongZ) {
  const auto r = run_text(example("ball_along_z.json"));
  EXPECT_EQ(r.exit_code, cli::kVerified);
  EXPECT_EQ(r.report["schema_version"], cli::kSchemaVersion);
  for (const auto& p : r.report["results"]["points"])
    for (const char* group : {"premise", "analytic", "geometric"})
      for (const auto& res : p[group]) EXPECT_LT(res["value"].get<double>(), 1e-12);
}

TEST(Cli, BergmanPointwiseRefutedWithUnitResidual) {
  const auto r = run_text(example("bergman_pointwise.json"));
  EXPECT_EQ(r.exit_code, cli::kRefuted);
  bool found = false;
  for (const auto& res : r.report["results"]["points"][0]["analytic"])
    if (res["key"].get<std::string>().rfind("curvature-intertwine", 0) == 0) {
      EXPECT_NEAR(res["value"].get<double>(), 1.0, 1e-12);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Cli, AppendixListsChecks) {
  const auto r = run_text(example("appendix.json"));
  EXPECT_EQ(r.exit_code, cli::kVerified);
  EXPECT_GE(r.report["results"]["checks"].size(), 10u);
  EXPECT_EQ(r.report["seed"], 7);
}

TEST(Cli, RkhsOrderOverride) {
  cli::Overrides ov;
  ov.order = 1;
  EXPECT_EQ(run_text(example("hardy_fock.json"), ov).exit_code, cli::kVerified);
  ov.order = 2;
  EXPECT_EQ(run_text(example("hardy_fock.json"), ov).exit_code, cli::kRefuted);
}

TEST(Cli, CurvatureTask) {
  const auto r = run_text(R"cfg({"task": "curvature", "order": 1,
    "bundle": {"dimension": 1, "gram": [["pow(1 - z1*zb1, -3)"]]},
    "curvature": {"i": 1, "j": 1, "r": 0, "t": 0}})cfg");
  EXPECT_EQ(r.exit_code, cli::kVerified);
  EXPECT_NEAR(r.report["results"]["bundles"][0]["points"][0]["value"][0][0][0].get<double>(), 3.0, 1e-12);
}

TEST(Cli, RecursionsTask) {
  const auto r = run_text(R"cfg({"task": "verify-recursions", "order": 3,
    "bundle": {"dimension": 2, "gram": [["2 + z1*zb1 + z1*zb2 + z2*zb1", "z1 + zb2"], ["zb1 + z2", "1 + z2*zb2 + z1*z2*zb1*zb2"]]},
    "points": [[0, 0], ["0.1+0.1i", -0.1]]})cfg");
  EXPECT_EQ(r.exit_code, cli::kVerified);
}

TEST(Cli, Deterministic) {
  const std::string cfg = example("hardy_fock.json");
  EXPECT_EQ(run_text(cfg).report.dump(), run_text(cfg).report.dump());
}

TEST(Cli, MalformedConfigsAreLocated) {
  EXPECT_THROW(cli::load_config("{\"task\": ", {}), InputError);
  const auto missing = run_text(R"cfg({"task": "pointwise", "bundle": {"dimension": 1, "gram": [["1"]]}})cfg");
  EXPECT_EQ(missing.exit_code, cli::kInputError);
  EXPECT_NE(missing.report["error"]["message"].get<std::string>().find("bundle_tilde"), std::string::npos);
  const auto badexpr = run_text(R"cfg({"task": "curvature", "bundle": {"dimension": 1, "gram": [["1 + * z1"]]}})cfg");
  EXPECT_EQ(badexpr.exit_code, cli::kInputError);
  EXPECT_NE(badexpr.report["error"]["message"].get<std::string>().find("bundle.gram"), std::string::npos);
  EXPECT_EQ(run_text(R"cfg({"task": "nope"})cfg").exit_code, cli::kInputError);
  EXPECT_EQ(run_text(R"cfg({"task": "along-z", "order": 0})cfg").exit_code, cli::kInputError);
  const auto offz = run_text(R"cfg({"task": "along-z",
    "bundle": {"dimension": 2, "gram": [["exp(z1*zb1 + z2*zb2)"]]},
    "bundle_tilde": {"dimension": 2, "gram": [["exp(z1*zb1 + z2*zb2)"]]},
    "points": [[0.1, 0]]})cfg");
  EXPECT_EQ(offz.exit_code, cli::kInputError);
}

TEST(Cli, DefaultToleranceOnlyWhenUnset) {
  EXPECT_EQ(cli::load_config(R"cfg({"task": "curvature"})cfg", {}, 1e-6)["tolerance"], 1e-6);
  EXPECT_EQ(cli::load_config(R"cfg({"task": "curvature", "tolerance": 1e-9})cfg", {}, 1e-6)["tolerance"], 1e-9);
  cli::Overrides ov;
  ov.tolerance = 1e-3;
  EXPECT_EQ(cli::load_config(R"cfg({"tolerance": 1e-9})cfg", ov, 1e-6)["tolerance"], 1e-3);
}
