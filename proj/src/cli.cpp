#include "cfs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cfs/annotated_counter.hpp"
#include "cfs/brute_oracle.hpp"
#include "cfs/onion.hpp"
#include "cfs/pointset.hpp"
#include "cfs/triangulation_counter.hpp"

namespace cfs {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kKinds{"triangulations", "matchings", "cycles"};
const std::vector<std::string> kFamilies{"grid", "convex", "square", "three-layers", "max-layers"};

struct GenParams {
  std::string family;
  int n = 0;
  int rows = 0;
  int cols = 0;
  std::uint64_t seed = 0;
};

PointSet generate(const GenParams& g) {
  try {
    if (g.family == "grid") return gen_grid(g.rows, g.cols);
    if (g.family == "convex") return gen_convex(g.n);
    if (g.family == "square") return gen_square(g.n, g.seed);
    if (g.family == "three-layers") return gen_three_layers(g.n, g.seed);
    if (g.family == "max-layers") return gen_max_layers(g.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family '" + g.family + "'");
}

double millis(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

void describe(json& r, const PointSet& pts) {
  r["n"] = pts.size();
  try {
    const auto onion = compute_onion(pts);
    r["k"] = onion.layer_count();
    r["h"] = onion.layers.empty() ? 0 : onion.layers.front().size();
  } catch (const std::exception&) {
    r["k"] = nullptr;
    r["h"] = nullptr;
  }
}

std::int64_t memo_cap_from_env() {
  const char* env = std::getenv("CFSCOUNT_MEMO_CAP");
  if (!env || !*env) return std::numeric_limits<std::int64_t>::max();
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v <= 0) throw UsageError("CFSCOUNT_MEMO_CAP must be a positive integer");
  return v;
}

void put_stats(json& r, const CountStats& s) {
  r["subproblems"] = s.subproblems;
  r["calls"] = s.calls;
  r["elapsed_ms"] = millis(s.elapsed);
  r["peak_memo_entries"] = s.subproblems;
  r["peak_memo_bytes"] = s.peak_memo_bytes;
}

struct CountRequest {
  std::string kind;
  fs::path file;
  fs::path restricted;
  std::int64_t memo_cap = 0;  // 0: environment or unlimited
  std::uint64_t labeling_seed = 0;
  bool no_memo = false;
};

void run_count(const CountRequest& q, const PointSet& pts, json& r) {
  CountOptions opt;
  opt.memoize = !q.no_memo;
  opt.memo_cap = q.memo_cap > 0 ? q.memo_cap : memo_cap_from_env();
  opt.labeling_seed = q.labeling_seed;
  r["labeling_seed"] = q.labeling_seed;
  if (!q.restricted.empty() && q.kind != "triangulations")
    throw UsageError("--restricted is only valid with kind=triangulations");
  try {
    CountResult res;
    if (q.kind == "triangulations" && !q.restricted.empty()) {
      const auto edges = read_edges(q.restricted, static_cast<int>(pts.size()));
      r["restricted"] = q.restricted.string();
      r["allowed_edges"] = edges.size();
      res = count_restricted_triangulations(pts, edges, opt);
    } else if (q.kind == "triangulations") {
      res = count_triangulations(pts, opt);
    } else if (q.kind == "matchings") {
      res = count_matchings(pts, opt);
    } else if (q.kind == "cycles") {
      res = count_spanning_cycles(pts, opt);
    } else {
      throw UsageError("unknown kind '" + q.kind + "'");
    }
    r["count"] = res.count.str();
    put_stats(r, res.stats);
  } catch (const ResourceLimitError& e) {
    put_stats(r, e.stats);
    throw;
  }
}

struct EnumerateRequest {
  std::string kind;
  fs::path file;
  fs::path restricted;
  bool perfect_only = false;
  int cap = 0;
};

void run_enumerate(const EnumerateRequest& q, const PointSet& pts, json& r) {
  OracleOptions opt;
  opt.cap = q.cap;
  r["oracle"] = true;
  if (!q.restricted.empty() && q.kind != "triangulations")
    throw UsageError("--restricted is only valid with kind=triangulations");
  if (q.perfect_only && q.kind != "matchings") throw UsageError("--perfect-only is only valid with kind=matchings");
  EnumerationResult res;
  if (q.kind == "triangulations" && !q.restricted.empty()) {
    const auto edges = read_edges(q.restricted, static_cast<int>(pts.size()));
    r["restricted"] = q.restricted.string();
    res = enumerate_restricted(pts, std::vector<Edge>(edges.begin(), edges.end()), opt);
  } else if (q.kind == "triangulations") {
    res = enumerate_triangulations(pts, opt);
  } else if (q.kind == "matchings") {
    r["perfect_only"] = q.perfect_only;
    res = enumerate_matchings(pts, q.perfect_only, opt);
  } else if (q.kind == "cycles") {
    res = enumerate_polygonizations(pts, opt);
  } else {
    throw UsageError("unknown kind '" + q.kind + "'");
  }
  r["count"] = res.count.str();
  r["subproblems"] = 0;
  r["elapsed_ms"] = millis(res.elapsed);
  r["peak_memo_entries"] = 0;
}

// Runs body, turning exceptions into an error record and an exit code.
template <class Body>
int guarded(json r, std::ostream& out, std::ostream& err, Body&& body) {
  int code = kExitOk;
  try {
    body(r);
  } catch (const UsageError& e) {
    code = kExitUsage;
    r["error"] = e.what();
  } catch (const ResourceLimitError& e) {
    code = kExitResource;
    r["error"] = e.what();
  } catch (const std::exception& e) {
    code = kExitPrecondition;
    r["error"] = e.what();
  }
  if (code != kExitOk) {
    r["exit"] = code;
    err << "cfscount: " << r["error"].get<std::string>() << '\n';
  }
  out << r.dump() << '\n';
  out.flush();
  return code;
}

json base_record(const std::string& command) {
  json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  return r;
}

}  // namespace

namespace {

int run_bench(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  json config;
  {
    std::ifstream in(config_path);
    if (!in) {
      err << "cfscount: cannot open " << config_path.string() << '\n';
      return kExitPrecondition;
    }
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      err << "cfscount: malformed config: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  const json instances = config.is_object() ? config.value("instances", json::array()) : json::array();
  const fs::path base = config_path.parent_path();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const json& spec = instances[i];
    json r = base_record("bench");
    r["config"] = config_path.string();
    r["index"] = i;
    guarded(r, out, err, [&](json& rec) {
      if (!spec.is_object()) throw UsageError("instance must be an object");
      rec["name"] = spec.value("name", "instance" + std::to_string(i));
      CountRequest q;
      q.kind = spec.value("kind", "triangulations");
      rec["kind"] = q.kind;
      q.memo_cap = spec.value("memo_cap", config.value("memo_cap", std::int64_t{0}));
      q.labeling_seed = spec.value("labeling_seed", std::uint64_t{0});
      if (spec.contains("restricted")) q.restricted = base / spec["restricted"].get<std::string>();
      PointSet pts;
      if (spec.contains("file")) {
        q.file = base / spec["file"].get<std::string>();
        rec["file"] = q.file.string();
        pts = read_point_set(q.file);
      } else if (spec.contains("generate")) {
        const json& g = spec["generate"];
        GenParams gp;
        gp.family = g.value("family", "");
        gp.n = g.value("n", 0);
        gp.rows = g.value("rows", 0);
        gp.cols = g.value("cols", 0);
        gp.seed = g.value("seed", std::uint64_t{0});
        rec["generate"] = g;
        pts = generate(gp);
      } else {
        throw UsageError("instance needs 'file' or 'generate'");
      }
      describe(rec, pts);
      if (rec["k"].is_number()) {
        const int n = rec["n"].get<int>(), k = rec["k"].get<int>();
        rec["bound_log2"] = theoretical_bound(n, k);
      }
      if (spec.contains("expected")) rec["expected"] = spec["expected"];
      run_count(q, pts, rec);
      if (spec.contains("expected")) rec["matches_expected"] = rec["count"] == spec["expected"];
    });
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting of triangulations, matchings and spanning cycles of planar point sets", "cfscount"};
  app.require_subcommand(1);

  GenParams gen;
  std::string gen_out;
  auto* g = app.add_subcommand("generate", "Write a generated point set");
  g->add_option("family", gen.family, "grid, convex, square, three-layers, max-layers")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  g->add_option("-n", gen.n, "Number of points");
  g->add_option("--rows", gen.rows, "Grid rows");
  g->add_option("--cols", gen.cols, "Grid columns");
  g->add_option("--seed", gen.seed, "Seed for random families");
  g->add_option("-o,--output", gen_out, "Output file (default: standard output)");

  CountRequest cnt;
  auto* c = app.add_subcommand("count", "Count with the exact dynamic programs");
  c->add_option("kind", cnt.kind)->required()->check(CLI::IsMember(kKinds));
  c->add_option("file", cnt.file)->required();
  c->add_option("--restricted", cnt.restricted, "Allowed edges, one 'i j' pair per line");
  c->add_option("--memo-cap", cnt.memo_cap, "Maximum memo entries (overrides CFSCOUNT_MEMO_CAP)");
  c->add_option("--labeling-seed", cnt.labeling_seed, "Shuffle labels within layers");
  c->add_flag("--no-memo", cnt.no_memo, "Disable memoization");

  EnumerateRequest en;
  auto* e = app.add_subcommand("enumerate", "Count by exhaustive enumeration (small inputs)");
  e->add_option("kind", en.kind)->required()->check(CLI::IsMember(kKinds));
  e->add_option("file", en.file)->required();
  e->add_option("--restricted", en.restricted, "Allowed edges, one 'i j' pair per line");
  e->add_flag("--perfect-only", en.perfect_only, "Only perfect matchings");
  e->add_option("--cap", en.cap, "Largest accepted point count");

  std::string bench_config;
  auto* b = app.add_subcommand("bench", "Run every instance listed in a JSON config");
  b->add_option("config", bench_config)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (g->parsed()) {
    json r = base_record("generate");
    r["family"] = gen.family;
    r["seed"] = gen.seed;
    if (gen_out.empty()) {
      try {
        out << serialize_point_set(generate(gen));
        return kExitOk;
      } catch (const UsageError& ex) {
        err << "cfscount: " << ex.what() << '\n';
        return kExitUsage;
      } catch (const std::exception& ex) {
        err << "cfscount: " << ex.what() << '\n';
        return kExitPrecondition;
      }
    }
    return guarded(r, out, err, [&](json& rec) {
      const PointSet pts = generate(gen);
      write_point_set(gen_out, pts);
      rec["file"] = gen_out;
      describe(rec, pts);
    });
  }
  if (c->parsed()) {
    json r = base_record("count");
    r["kind"] = cnt.kind;
    r["file"] = cnt.file.string();
    return guarded(r, out, err, [&](json& rec) {
      const PointSet pts = read_point_set(cnt.file);
      describe(rec, pts);
      run_count(cnt, pts, rec);
    });
  }
  if (e->parsed()) {
    json r = base_record("enumerate");
    r["kind"] = en.kind;
    r["file"] = en.file.string();
    return guarded(r, out, err, [&](json& rec) {
      const PointSet pts = read_point_set(en.file);
      describe(rec, pts);
      run_enumerate(en, pts, rec);
    });
  }
  return run_bench(bench_config, out, err);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace cfs
