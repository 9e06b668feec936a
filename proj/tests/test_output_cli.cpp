#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qclone/cli.hpp"
#include "qclone/output.hpp"
#include "qclone/plot.hpp"

using namespace qclone;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  args.insert(args.begin(), "qclone");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("format_real") {
  CHECK(io::format_real(0.0) == "0");
  CHECK(io::format_real(std::sqrt(5.0) - 2.0) == "0.236067977500");
  CHECK(io::format_real(0.5) == "0.500000000000");
  CHECK(io::round12(0.1234567890123456) == 0.123456789012);
}

TEST_CASE("bounds csv round-trips") {
  std::vector<BoundSample> rows;
  for (int i = 0; i <= 50; ++i) {
    const double z = i / 50.0;
    for (int n : {1, 3}) rows.push_back({z, n, sum_min(z, n), BoundKind::sum});
  }
  const auto parsed = io::parse_bounds_csv(io::bounds_csv(rows));
  REQUIRE(parsed.size() == rows.size());
  for (const auto& r : parsed) {
    CHECK(r.kind == BoundKind::sum);
    CHECK(std::abs(r.value - evaluate_bound(r.kind, r.z, r.n)) <= 1e-12);
  }
  CHECK_THROWS(io::parse_bounds_csv("a,b\n1,2\n"));
}

TEST_CASE("bounds subcommand") {
  auto r = run({"bounds", "--kind", "sum", "--z", "0.5", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "z,n,kind,value\n0.500000000000,1,sum,0.236067977500\n");

  r = run({"bounds", "--kind", "equal-simplified", "--z", "0", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1) == "0,2,equal-simplified,0");

  r = run({"bounds", "--kind", "perfect-first", "--grid", "5", "--n", "1", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["schema_version"] == io::kSchemaVersion);
  CHECK(doc["rows"].size() == 10);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"bounds", "--kind", "bogus", "--z", "0.5"}).code == cli::kUsage);
  CHECK(run({"bounds", "--kind", "sum"}).code == cli::kUsage);
  CHECK(run({"bounds", "--kind", "sum", "--z", "0.5", "--grid", "3"}).code == cli::kUsage);
  CHECK(run({"optimize", "--z", "1.5"}).code == cli::kUsage);
  CHECK(run({"verify", "--profile", "nope"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"verify"}, std::string("abc")).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("domain errors exit with 1") {
  CHECK(run({"bounds", "--kind", "sum", "--z", "1.5"}).code == cli::kFailure);
  CHECK(run({"bounds", "--kind", "equal-exact", "--z", "0.5", "--n", "2"}).code == cli::kFailure);
}

TEST_CASE("unwritable output exits with 1") {
  const auto r = run({"bounds", "--kind", "sum", "--z", "0.5", "--output", "/nonexistent-dir/x.csv"});
  CHECK(r.code == cli::kFailure);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("maxima subcommand") {
  auto r = run({"maxima", "--kind", "perfect-first", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1).rfind("perfect-first,1,0.57735", 0) == 0);

  r = run({"maxima", "--kind", "sum", "--n", "1", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  REQUIRE(doc["maxima"].size() == 2);
  CHECK(doc["maxima"][0]["method"] == "closed-form");
  CHECK(doc["maxima"][1]["method"] == "grid+golden");
  CHECK(std::abs(doc["maxima"][0]["value"].get<double>() - (std::sqrt(5.0) - 2.0)) < 1e-11);
}

TEST_CASE("figure1 subcommand and plot") {
  const auto svg = std::filesystem::temp_directory_path() / "qclone_test_fig.svg";
  std::filesystem::remove(svg);
  const auto r = run({"figure1", "--points", "101", "--plot", svg.string()});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  CHECK(l.at(0) == "z,n,x_min");
  CHECK(l.size() == 1 + 101 * 6);
  std::ifstream f(svg);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
  CHECK(ss.str().find("n = 100") != std::string::npos);
  std::filesystem::remove(svg);
}

TEST_CASE("figure1_rows ordering") {
  const auto rows = cli::figure1_rows({3, 1}, 3);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].n == 1);
  CHECK(rows[1].n == 3);
  CHECK(rows[2].z == 0.5);
}

TEST_CASE("svg renderer clips and labels") {
  const auto s = plot::render_svg({{"a", {{0.0, 0.0}, {0.5, 2.0}, {1.0, 0.1}}}});
  CHECK(s.rfind("<?xml", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find(">a<") != std::string::npos);
}

TEST_CASE("optimize subcommand") {
  const auto r = run({"optimize", "--z", "0", "--n", "1", "--dx", "1", "--starts", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["objective_value"].get<double>() <= 1e-9);
  CHECK(doc["scenario"]["d_x"] == 1);
}

TEST_CASE("optimize honours QCLONE_SEED and --seed") {
  const std::vector<std::string> base{"optimize", "--z", "0.4", "--dx", "1", "--starts", "2",
                                      "--max-iters", "3000", "--format", "json"};
  auto with = base;
  with.insert(with.end(), {"--seed", "9"});
  const auto a = run(base, std::string("9"));
  const auto b = run(with);
  const auto c = run(base);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["evaluations"] != json::parse(c.out)["evaluations"]);
}

TEST_CASE("verify subcommand") {
  const auto a = run({"verify", "--profile", "quick", "--seed", "7", "--format", "json"});
  const auto b = run({"verify", "--profile", "quick", "--seed", "7", "--format", "json"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  const auto doc = json::parse(a.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["passed"] == true);
  CHECK(doc["seed"] == 7);

  const auto m = run({"verify", "--profile", "mutant-drop-cross"});
  CHECK(m.code == cli::kFailure);
  CHECK(m.err.find("no_violation") != std::string::npos);
}
