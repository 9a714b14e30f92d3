#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace vt;

namespace {

const std::string kCli = VEEVERIFY_CLI;
const std::string kSamples = VEEVERIFY_SAMPLES;

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& cmd) {
  Shell s{-1, {}};
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return s;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) s.out.append(buf.data(), n);
  const int status = pclose(pipe);
  s.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

RunPlan family_plan(FamilySpec spec, std::vector<CheckKind> checks) {
  RunPlan plan;
  plan.input = std::move(spec);
  plan.checks = std::move(checks);
  plan.format = OutputFormat::json;
  return plan;
}

RunPlan text_plan(std::vector<CheckKind> checks) {
  RunPlan plan;
  plan.input = std::string("-");
  plan.checks = std::move(checks);
  plan.format = OutputFormat::json;
  return plan;
}

}  // namespace

TEST(Run, DeformedFamilyPassesAll) {
  const RunResult res = run(family_plan({Family::A_deformed, 2, {{"m", r(2)}}}, all_checks()));
  EXPECT_EQ(res.exit_code, 0) << res.text;
  EXPECT_EQ(res.report["checks"].size(), all_checks().size());
  EXPECT_EQ(res.report["configuration"]["mu"], qelem_to_json(q(5)));
  EXPECT_EQ(res.report["configuration"]["lambda"], qelem_to_json(q(18)));
  EXPECT_EQ(res.report["configuration"]["components"], 1);
}

TEST(Run, ChecksRunInPlanOrder) {
  const RunResult res = run(family_plan({Family::B, 2, {{"short", r(1)}, {"long", r(2)}}},
                                        {CheckKind::flat, CheckKind::main_exact, CheckKind::scalar_M}));
  ASSERT_EQ(res.report["checks"].size(), 3u);
  EXPECT_EQ(res.report["checks"][0]["check"], "flat");
  EXPECT_EQ(res.report["checks"][1]["check"], "main-exact");
  EXPECT_EQ(res.report["checks"][2]["check"], "scalar-M");
}

TEST(Run, BrokenA2FailsWithWitness) {
  std::ifstream in(kSamples + "/broken_a2.json");
  const RunResult res = run(text_plan({CheckKind::main_exact}), in);
  EXPECT_EQ(res.exit_code, 1);
  const Json& w = res.report["checks"][0]["witness"];
  ASSERT_TRUE(w.is_object()) << res.text;
  EXPECT_EQ(w["pivot"], 0);
  EXPECT_EQ(w["class"], Json::array({1, 2}));
}

TEST(Run, InvalidInputsExitTwo) {
  std::istringstream malformed("{\"name\": ");
  RunResult res = run(text_plan({CheckKind::main_exact}), malformed);
  EXPECT_EQ(res.exit_code, 2);
  EXPECT_EQ(res.report["error"]["kind"], "InvalidInput");

  const std::string good = canonical_dump(configuration_to_json(a2_plane()));
  Json extra = Json::parse(good);
  extra["colour"] = "blue";
  std::istringstream unknown(extra.dump());
  res = run(text_plan({CheckKind::main_exact}), unknown);
  EXPECT_EQ(res.exit_code, 2);

  std::istringstream collinear(R"({"name": "c", "ambient_dim": 2, "radicand": {"num": "0", "den": "1"},
    "direction": [{"num": "1", "den": "1"}, {"num": "1", "den": "3"}],
    "members": [{"coords": [[{"num": "1", "den": "1"}, {"num": "0", "den": "1"}], [{"num": "0", "den": "1"}, {"num": "0", "den": "1"}]], "multiplicity": {"num": "1", "den": "1"}},
                {"coords": [[{"num": "2", "den": "1"}, {"num": "0", "den": "1"}], [{"num": "0", "den": "1"}, {"num": "0", "den": "1"}]], "multiplicity": {"num": "1", "den": "1"}}]})");
  res = run(text_plan({CheckKind::main_exact}), collinear);
  EXPECT_EQ(res.exit_code, 2);
  EXPECT_EQ(res.report["error"]["kind"], "CollinearPair");
  EXPECT_EQ(res.report["error"]["indices"], Json::array({0, 1}));

  std::istringstream empty_checks(good);
  res = run(text_plan({}), empty_checks);
  EXPECT_EQ(res.exit_code, 2);
}

TEST(Run, ConfigurationJsonRoundTrip) {
  for (const auto& [label, cfg] : passing_suite()) {
    const std::string text = canonical_dump(configuration_to_json(cfg));
    const Configuration back = configuration_from_string(text);
    EXPECT_EQ(canonical_dump(configuration_to_json(back)), text) << label;
  }
}

TEST(Run, ReportRoundTripsByteIdentical) {
  const RunResult res = run(family_plan({Family::C_deformed, 1, {{"m", r(2)}, {"l", r(1)}}}, all_checks()));
  EXPECT_EQ(canonical_dump(Json::parse(res.text)), res.text);
}

TEST(Run, SeedReproducibility) {
  RunPlan plan = family_plan({Family::G2, 2, {{"short", r(1)}, {"long", r(3)}}}, all_checks());
  plan.numeric.seed = 77;
  const std::string a = run(plan).text;
  const std::string b = run(plan).text;
  EXPECT_EQ(a, b);
  plan.numeric.seed = 78;
  EXPECT_NE(run(plan).text, a);
}

TEST(Run, NearToleranceIsInconclusive) {
  RunPlan plan = family_plan({Family::B, 3, {{"short", r(1)}, {"long", r(2)}}}, {CheckKind::main_numeric});
  const double residual = run(plan).report["checks"][0]["numeric"]["max_residual"].get<double>();
  ASSERT_GT(residual, 0.0);
  plan.numeric.tol = residual / 2;
  const RunResult res = run(plan);
  EXPECT_EQ(res.exit_code, 3) << res.text;
  EXPECT_EQ(res.report["checks"][0]["verdict"], "inconclusive");
}

TEST(Run, WitnessMatrices) {
  RunPlan plan = family_plan({Family::A, 3, {{"all", r(1)}}}, {CheckKind::vee, CheckKind::wdvv});
  plan.emit_witness_matrices = true;
  const RunResult res = run(plan);
  EXPECT_TRUE(res.report["checks"][0]["details"].contains("G_inverse"));
  EXPECT_EQ(res.report["checks"][1]["details"]["commutators"].size(), 3u);
}

TEST(Cli, Version) {
  const Shell s = shell(kCli + " version");
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, std::string("veeverify ") + kVersion + "\n");
}

TEST(Cli, GeneratePipeIntoCheck) {
  const Shell s = shell(kCli + " generate --family A_deformed --rank 2 --m 2 | " + kCli + " check --all -");
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("✓ main-exact"), std::string::npos);
}

TEST(Cli, BrokenSampleExitsOne) {
  const Shell s = shell(kCli + " check --checks main-exact " + kSamples + "/broken_a2.json");
  EXPECT_EQ(s.code, 1) << s.out;
  EXPECT_NE(s.out.find("witness: pivot 0"), std::string::npos) << s.out;
}

TEST(Cli, MalformedExitsTwo) {
  const Shell s = shell(kCli + " check --all --format json " + kSamples + "/malformed.json");
  EXPECT_EQ(s.code, 2);
  EXPECT_EQ(Json::parse(s.out)["error"]["kind"], "InvalidInput");
  EXPECT_EQ(shell(kCli + " check --all /nonexistent/file.json").code, 2);
  EXPECT_EQ(shell(kCli + " check --checks bogus " + kSamples + "/a2_plane.json").code, 2);
  EXPECT_EQ(shell(kCli + " generate --family E --rank 8").code, 2);
  EXPECT_EQ(shell(kCli + " check --all --samples 0 " + kSamples + "/a2_plane.json").code, 2);
  EXPECT_EQ(shell(kCli + " frobnicate").code, 2);
}

TEST(Cli, InconclusiveExitsThree) {
  const Shell probe = shell(kCli + " check --checks main-numeric --format json --family B --rank 3 --mult short=1 long=2");
  ASSERT_EQ(probe.code, 0);
  const double residual = Json::parse(probe.out)["checks"][0]["numeric"]["max_residual"].get<double>();
  char tol[64];
  std::snprintf(tol, sizeof tol, "%.17g", residual / 2);
  const Shell s = shell(kCli + " check --checks main-numeric --tol " + tol + " --family B --rank 3 --mult short=1 long=2");
  EXPECT_EQ(s.code, 3) << s.out;
}

TEST(Cli, JsonReportsAreReproducible) {
  const std::string cmd = kCli + " check --all --format json --seed 5 " + kSamples + "/a2_plane.json";
  const Shell a = shell(cmd);
  const Shell b = shell(cmd);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(canonical_dump(Json::parse(a.out)), a.out);
}

TEST(Cli, OutFileAndCommaList) {
  const std::string path = ::testing::TempDir() + "veeverify_report.json";
  const Shell s = shell(kCli + " check --checks main-exact,vee --format json --out " + path + " " + kSamples +
                        "/a2_plane.json");
  EXPECT_EQ(s.code, 0);
  std::ifstream in(path);
  const Json report = Json::parse(in);
  EXPECT_EQ(report["checks"].size(), 2u);
  EXPECT_EQ(report["exit_code"], 0);
}

TEST(Cli, GenerateDefaultsAndOrbits) {
  const Shell s = shell(kCli + " generate --family B --rank 2 --mult short=1/2 long=3");
  ASSERT_EQ(s.code, 0);
  const Configuration c = configuration_from_string(s.out);
  EXPECT_EQ(c.member(0).multiplicity, r(1, 2));
  EXPECT_EQ(c.member(3).multiplicity, r(3));
  const Shell d = shell(kCli + " generate --family D --rank 4");
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(configuration_from_string(d.out).size(), 12u);
  EXPECT_EQ(shell(kCli + " generate --family C_deformed --rank 1 --m 2").code, 2);
}
