#include "tilekit/cli.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/report.hpp"
#include "tilekit/spec_format.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace tilekit {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  CliRun r;
  r.code = run_cli(args, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tilekit_cli_" + std::to_string(::getpid()) + "_" + name);
}

TEST(Cli, AnalyzeTorusPreset) {
  const CliRun r = cli({"analyze", "--preset", "torus-9fold"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Euler characteristic: χ=0"), std::string::npos);
  EXPECT_NE(r.out.find("total defect: 0°"), std::string::npos);
  EXPECT_NE(r.out.find("Descartes: holds"), std::string::npos);
  EXPECT_EQ(r.out, format_topology(torus_9fold(), ReportFormat::Text));
}

TEST(Cli, AnalyzeSpecFromStdinAndFile) {
  const std::string spec = write_spec(platonic(Platonic::Cube));
  const CliRun piped = cli({"analyze", "--spec", "-", "--format", "json"}, spec);
  ASSERT_EQ(piped.code, kExitOk) << piped.err;
  EXPECT_EQ(nlohmann::json::parse(piped.out)["chi"], 2);

  const auto path = temp_file("cube.yaml");
  std::ofstream(path) << spec;
  const CliRun from_file = cli({"analyze", "--spec", path.string(), "--format", "json"});
  EXPECT_EQ(from_file.out, piped.out);
  std::filesystem::remove(path);
}

TEST(Cli, BuildWritesCanonicalSpec) {
  const CliRun r = cli({"build", "--preset", "football-7-1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, write_spec(football_disk(7, 1)));
  const CliRun again = cli({"build", "--spec", "-"}, r.out);
  EXPECT_EQ(again.out, r.out);
  const CliRun list = cli({"build", "--list-presets"});
  EXPECT_NE(list.out.find("truncated-icosahedron\n"), std::string::npos);
}

TEST(Cli, EnumerateFlat) {
  const CliRun r = cli({"enumerate", "--class", "flat", "--max-sides", "42", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 17u);
}

TEST(Cli, TriangleOnHyperbolicPatch) {
  const CliRun r = cli({"triangle", "--preset", "football-7-3", "--a", "15:0,0", "--b", "11:0,0", "--c", "21:0,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("enclosed defect: -68 4/7°"), std::string::npos);
  EXPECT_NE(r.out.find("theorem: holds"), std::string::npos);
}

TEST(Cli, TraceBothModes) {
  CliRun r = cli({"trace", "--preset", "football-6-2", "--from", "0:0,0", "--dir", "1,0.2", "--length", "1.5",
               "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "complete");
  r = cli({"trace", "--preset", "football-6-2", "--from", "0:0,0", "--to", "3:0.1,0.1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("length:"), std::string::npos);
  EXPECT_EQ(cli({"trace", "--preset", "cube", "--from", "0:0,0"}).code, kExitUsage);
}

TEST(Cli, RelaxAndExport) {
  const auto obj = temp_file("cube.obj");
  const CliRun r = cli({"relax", "--preset", "cube", "--obj", obj.string(), "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LT(nlohmann::json::parse(r.out)["max_residual"].get<double>(), 1e-4);
  EXPECT_TRUE(std::filesystem::exists(obj));
  std::filesystem::remove(obj);

  const CliRun a = cli({"export", "--preset", "tetrahedron", "--format", "obj", "--seed", "3"});
  const CliRun b = cli({"export", "--preset", "tetrahedron", "--format", "obj", "--seed", "3"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);

  const CliRun svg = cli({"export", "--preset", "cube", "--format", "svg", "--tree", "dfs", "--path", "0:0,0 3:0,0"});
  ASSERT_EQ(svg.code, kExitOk) << svg.err;
  EXPECT_EQ(svg.out.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.out.find("class=\"path\""), std::string::npos);

  const CliRun net = cli({"export", "--preset", "cube", "--format", "net"});
  EXPECT_EQ(nlohmann::json::parse(net.out)["faces"].size(), 6u);
}

TEST(Cli, ExitCodes) {
  CliRun r = cli({"analyze", "--preset", "no-such-shape"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_EQ(r.err.rfind("error: UnknownSolid:", 0), 0u) << r.err;

  r = cli({"analyze", "--spec", "-"}, "faces:\n  - {name: a, sides: 4}\nglue:\n  - [a, 0, b, 0]\n");
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_EQ(r.err.rfind("error: DanglingReference: line 4, column", 0), 0u) << r.err;

  EXPECT_EQ(cli({"analyze", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze", "--preset", "cube", "--spec", "x"}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze", "--preset", "cube", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(cli({"enumerate", "--class", "weird"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze", "--spec", "/nonexistent/file.yaml"}).code, kExitDomainError);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace tilekit
