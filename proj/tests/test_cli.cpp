#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfs/cli.hpp"
#include "cfs/count.hpp"
#include "cfs/pointset.hpp"

using namespace cfs;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  std::vector<json> records() const {
    std::vector<json> r;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) r.push_back(json::parse(line));
    return r;
  }
  json record() const {
    const auto r = records();
    REQUIRE(r.size() == 1);
    return r.front();
  }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "cfs_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string points(const std::string& name, const PointSet& p) { return file(name, serialize_point_set(p)); }

}  // namespace

TEST_CASE("generate") {
  const auto grid = (scratch() / "grid6x6.pts").string();
  auto r = cli({"generate", "grid", "--rows", "6", "--cols", "6", "-o", grid});
  CHECK(r.code == kExitOk);
  CHECK(r.record()["n"] == 36);
  CHECK(r.record()["schema"] == kReportSchema);
  CHECK(read_point_set(grid).size() == 36);

  r = cli({"generate", "convex", "-n", "12"});
  CHECK(r.code == kExitOk);
  const auto convex = parse_point_set(r.out);
  CHECK(convex.size() == 12);

  const auto a = cli({"generate", "three-layers", "-n", "30", "--seed", "7"});
  const auto b = cli({"generate", "three-layers", "-n", "30", "--seed", "7"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);

  CHECK(cli({"generate", "hexagonal", "-n", "5"}).code == kExitUsage);
  CHECK(cli({"generate", "convex", "-n", "2"}).code == kExitUsage);
  CHECK(cli({"generate", "grid", "--rows", "1", "--cols", "4", "-o", grid + ".bad"}).code == kExitUsage);
}

TEST_CASE("count") {
  const auto grid = points("g66.pts", gen_grid(6, 6));
  auto r = cli({"count", "triangulations", grid});
  REQUIRE(r.code == kExitOk);
  const auto rec = r.record();
  CHECK(rec["count"] == "260420548144996");
  CHECK(BigCount(rec["count"].get<std::string>()) == BigCount("260420548144996"));
  CHECK(rec["k"] == 3);
  CHECK(rec["h"] == 20);
  CHECK(rec["subproblems"].get<std::int64_t>() > 0);
  CHECK(rec["peak_memo_entries"] == rec["subproblems"]);
  CHECK(rec.contains("elapsed_ms"));

  r = cli({"count", "cycles", points("c8.pts", gen_convex(8))});
  CHECK(r.code == kExitOk);
  CHECK(r.record()["count"] == "1");

  r = cli({"count", "matchings", grid});
  CHECK(r.code == kExitPrecondition);
  CHECK(r.record()["exit"] == kExitPrecondition);
  CHECK_FALSE(r.err.empty());

  CHECK(cli({"count", "triangulations", (scratch() / "missing.pts").string()}).code == kExitPrecondition);
  CHECK(cli({"count", "triangulations", file("bad.pts", "2\n0 0\n0 zero\n")}).code == kExitPrecondition);
  CHECK(cli({"count", "polygons", grid}).code == kExitUsage);
  CHECK(cli({"count"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
}

TEST_CASE("restricted counting") {
  const auto quad = file("quad.pts", "4\n0 0\n4 0\n5 3\n1 4\n");
  const auto all = file("all.edges", "0 1\n1 2\n2 3\n3 0\n0 2\n1 3\n");
  const auto sides = file("sides.edges", "0 1\n1 2\n2 3\n3 0\n");
  CHECK(cli({"count", "triangulations", quad, "--restricted", all}).record()["count"] == "2");
  CHECK(cli({"count", "triangulations", quad, "--restricted", sides}).record()["count"] == "0");
  CHECK(cli({"enumerate", "triangulations", quad, "--restricted", all}).record()["count"] == "2");
  CHECK(cli({"count", "matchings", quad, "--restricted", all}).code == kExitUsage);
  CHECK(cli({"count", "triangulations", quad, "--restricted", file("oob.edges", "0 9\n")}).code == kExitPrecondition);
}

TEST_CASE("memo cap") {
  const auto grid = points("g55.pts", gen_grid(5, 5));
  auto r = cli({"count", "triangulations", grid, "--memo-cap", "20"});
  CHECK(r.code == kExitResource);
  CHECK(r.record()["subproblems"].get<int>() > 0);

  setenv("CFSCOUNT_MEMO_CAP", "20", 1);
  CHECK(cli({"count", "triangulations", grid}).code == kExitResource);
  setenv("CFSCOUNT_MEMO_CAP", "lots", 1);
  CHECK(cli({"count", "triangulations", grid}).code == kExitUsage);
  unsetenv("CFSCOUNT_MEMO_CAP");
  CHECK(cli({"count", "triangulations", grid}).code == kExitOk);
}

TEST_CASE("enumerate") {
  auto r = cli({"enumerate", "triangulations", points("c6.pts", gen_convex(6))});
  CHECK(r.record()["count"] == "14");
  CHECK(r.record()["oracle"] == true);
  CHECK(cli({"enumerate", "matchings", file("two.pts", "2\n0 0\n1 1\n")}).record()["count"] == "2");
  CHECK(cli({"enumerate", "matchings", file("two.pts", "2\n0 0\n1 1\n"), "--perfect-only"}).record()["count"] == "1");

  const auto random8 = points("r8.pts", gen_square(8, 5));
  const auto counted = cli({"count", "cycles", random8}).record()["count"];
  CHECK(cli({"enumerate", "cycles", random8}).record()["count"] == counted);

  CHECK(cli({"enumerate", "triangulations", points("c13.pts", gen_convex(13))}).code == kExitPrecondition);
  CHECK(cli({"enumerate", "triangulations", points("c13.pts", gen_convex(13)), "--cap", "13"}).code == kExitOk);
  CHECK(cli({"enumerate", "cycles", random8, "--perfect-only"}).code == kExitUsage);
}

TEST_CASE("bench") {
  auto r = cli({"bench", file("empty.json", "{}")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(cli({"bench", file("empty2.json", "{\"instances\": []}")}).out.empty());
  CHECK(cli({"bench", (scratch() / "nope.json").string()}).code == kExitPrecondition);
  CHECK(cli({"bench", file("broken.json", "{")}).code == kExitUsage);

  const char* dir = std::getenv("CFS_BENCH_DIR");
  const std::string convex = dir ? std::string(dir) + "/convex.json" : "bench/convex.json";
  r = cli({"bench", convex});
  CHECK(r.code == kExitOk);
  const auto recs = r.records();
  CHECK(recs.size() == 13);
  for (const auto& rec : recs) {
    CHECK(rec["matches_expected"] == true);
    CHECK(rec.contains("bound_log2"));
  }

  const auto mixed = file("mixed.json", R"({"instances": [
    {"name": "tri", "file": "quad.pts"},
    {"name": "bad", "generate": {"family": "convex", "n": 2}},
    {"name": "cyc", "kind": "cycles", "generate": {"family": "square", "n": 6, "seed": 2}}
  ]})");
  file("quad.pts", "4\n0 0\n4 0\n5 3\n1 4\n");
  r = cli({"bench", mixed});
  CHECK(r.code == kExitOk);
  const auto m = r.records();
  REQUIRE(m.size() == 3);
  CHECK(m[0]["count"] == "2");
  CHECK(m[1].contains("error"));
  CHECK(m[2].contains("count"));
}
