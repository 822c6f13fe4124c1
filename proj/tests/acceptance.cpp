// One PASS/FAIL line per acceptance criterion. Pass criterion numbers as
// arguments to run a subset.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cfs/annotated_counter.hpp"
#include "cfs/brute_oracle.hpp"
#include "cfs/cdt.hpp"
#include "cfs/onion.hpp"
#include "cfs/pointset.hpp"
#include "cfs/triangulation_counter.hpp"

using namespace cfs;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail.str("");
      detail << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

BigCount catalan(int m) {
  BigCount c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

ConstraintSet random_constraints(const PointSet& p, std::mt19937_64& rng, int want) {
  const auto v = to_lattice(p);
  const int n = static_cast<int>(p.size());
  ConstraintSet s;
  for (int tries = 0; tries < 100 && static_cast<int>(s.edges.size()) < want; ++tries) {
    const int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    if (a == b || s.contains(a, b)) continue;
    bool ok = true;
    for (auto [c, d] : s.edges) ok = ok && !properly_cross(v[a], v[b], v[c], v[d]);
    if (ok) s.edges.push_back(make_edge(a, b));
  }
  return s;
}

// Seeded general-position instance of size n.
PointSet instance(int n, std::uint64_t seed) {
  return n >= 9 && seed % 2 ? gen_three_layers(n, seed) : gen_square(n, seed);
}

void criterion1(Outcome& o) {
  const std::pair<int, const char*> rows[] = {
      {6, "260420548144996"}, {7, "341816489625522032"}, {8, "464476385680935656240"}};
  for (auto [cols, expected] : rows) {
    const auto t = Clock::now();
    const auto r = count_triangulations(gen_grid(6, cols));
    o.detail << "6x" << cols << "=" << r.count << " (" << std::fixed << std::setprecision(1) << seconds_since(t)
             << "s) ";
    o.require(r.count == BigCount(expected), "6x" + std::to_string(cols) + " gave " + r.count.str());
  }
}

void criterion2(Outcome& o) {
  const auto t = Clock::now();
  for (int n = 4; n <= 16; ++n) {
    const auto c = count_triangulations(gen_convex(n)).count;
    o.require(c == catalan(n - 2), "convex " + std::to_string(n) + " gave " + c.str());
  }
  const double s = seconds_since(t);
  o.require(s < 60, "took " + std::to_string(s) + "s");
  o.detail << "n=4..16 Catalan in " << std::fixed << std::setprecision(2) << s << "s";
}

void criterion3(Outcome& o) {
  int checked = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int n = 4 + static_cast<int>(i % 8);
    const auto p = instance(n, 1000 + i);
    const auto fast = count_triangulations(p).count, slow = enumerate_triangulations(p).count;
    o.require(fast == slow, "n=" + std::to_string(n) + " seed " + std::to_string(1000 + i) + ": " + fast.str() +
                                " vs " + slow.str());
    ++checked;
  }
  if (o.pass) o.detail << checked << " instances, n in [4,11]";
}

void criterion4(Outcome& o) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(i % 8);
    const auto p = gen_square(n, 2000 + i);
    const auto fast = count_matchings(p).count, slow = enumerate_matchings(p, false).count;
    o.require(fast == slow, "n=" + std::to_string(n) + " seed " + std::to_string(2000 + i) + ": " + fast.str() +
                                " vs " + slow.str());
  }
  const auto c4 = count_matchings(gen_convex(4)).count;
  o.require(c4 == 9 && enumerate_matchings(gen_convex(4), false).count == 9, "convex-4 gave " + c4.str());
  o.require(enumerate_matchings(gen_convex(6), true).count == 5, "convex-6 perfect-only is not 5");
  if (o.pass) o.detail << "100 instances, n in [2,9]; convex-4 = 9; convex-6 perfect = 5";
}


void criterion5(Outcome& o) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int n = 4 + static_cast<int>(i % 6);
    const auto p = gen_square(n, 3000 + i);
    const auto rooted = count_rooted_cycles(p).count;
    o.require(rooted % (2 * n) == 0, "rooted total " + rooted.str() + " not divisible by 2n, n=" + std::to_string(n));
    const BigCount fast = rooted / (2 * n), slow = enumerate_polygonizations(p).count;
    o.require(fast == slow, "n=" + std::to_string(n) + " seed " + std::to_string(3000 + i) + ": " + fast.str() +
                                " vs " + slow.str());
    o.require(count_spanning_cycles(p).count == fast, "count_spanning_cycles disagrees with rooted/2n");
  }
  if (o.pass) o.detail << "100 instances, n in [4,9]; rooted totals divisible by 2n";
}

void criterion6(Outcome& o) {
  const auto quad = parse_point_set("4\n0 0\n4 0\n5 3\n1 4\n");
  const std::vector<std::pair<int, int>> all{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
  const std::vector<std::pair<int, int>> sides{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  o.require(count_restricted_triangulations(quad, all).count == 2, "quad with all segments is not 2");
  o.require(count_restricted_triangulations(quad, sides).count == 0, "quad with sides only is not 0");
  std::mt19937_64 rng(6);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const int n = 4 + static_cast<int>(i % 6);
    const auto p = instance(n, 4000 + i);
    const int keep = 55 + static_cast<int>(rng() % 41);
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (static_cast<int>(rng() % 100) < keep) e.emplace_back(a, b);
    const auto fast = count_restricted_triangulations(p, e).count;
    const auto slow = enumerate_restricted(p, std::vector<Edge>(e.begin(), e.end())).count;
    o.require(fast == slow, "n=" + std::to_string(n) + " instance " + std::to_string(i) + ": " + fast.str() +
                                " vs " + slow.str());
  }
  if (o.pass) o.detail << "quad fixtures 2 and 0; 50 random (P,E), n in [4,9]";
}

void criterion7(Outcome& o) {
  std::mt19937_64 rng(7);
  int exhaustive = 0, matchings = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int n = 4 + static_cast<int>(i % 9);
    const auto p = instance(n, 5000 + i);
    const auto s = random_constraints(p, rng, 1 + static_cast<int>(rng() % (n / 2)));
    const auto mesh = build_cdt(p, s);
    for (auto [a, b] : s.edges) o.require(mesh.has_edge(a, b), "constraint missing");
    for (const Edge& e : mesh.edges)
      if (!mesh.is_hull_edge(e.first, e.second) && !s.contains(e.first, e.second))
        o.require(!is_flippable(mesh, e, s), "flippable non-constraint edge");
    for (std::uint64_t order = 1; order <= 5; ++order)
      o.require(build_cdt(p, s, order * 104729 + i) == mesh, "output depends on insertion order");
    if (n > 7) continue;
    ++exhaustive;
    std::set<std::pair<std::vector<Edge>, std::map<Edge, int>>> images;
    int emitted = 0;
    OracleOptions opt;
    opt.sink = [&](const std::vector<Edge>& m) {
      const auto [cdt, ann] = annotate_matching(p, m);
      o.require(is_legal_annotated_cdt(cdt, ann), "annotated CDT of a matching is not legal");
      images.emplace(cdt.edges, ann.bit);
      ++emitted;
    };
    enumerate_matchings(p, false, opt);
    o.require(static_cast<int>(images.size()) == emitted, "two matchings share an annotated CDT");
    matchings += emitted;
  }
  if (o.pass)
    o.detail << "100 sets, n in [4,12], 5 insertion orders each; injectivity over " << matchings << " matchings on "
             << exhaustive << " sets with n <= 7";
}

void criterion8(Outcome& o) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const int n = 5 + static_cast<int>(i % 4);
    const auto p = gen_square(n, 6000 + i);
    const auto base = compute_onion(p);
    std::set<std::vector<int>> labelings;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t seed = 0; labelings.size() < 5 && seed < 1000; ++seed)
      if (labelings.insert(relabel_within_layers(base, seed).labels).second) seeds.push_back(seed);
    o.require(seeds.size() == 5, "fewer than 5 distinct labelings");
    std::set<std::string> t, m, c;
    for (std::uint64_t seed : seeds) {
      CountOptions opt;
      opt.labeling_seed = seed;
      t.insert(count_triangulations(p, opt).count.str());
      m.insert(count_matchings(p, opt).count.str());
      c.insert(count_spanning_cycles(p, opt).count.str());
    }
    o.require(t.size() == 1 && m.size() == 1 && c.size() == 1, "counts vary with labeling on instance " + std::to_string(i));
  }
  if (o.pass) o.detail << "20 instances x 5 labelings x 3 counters identical";
}

}  // namespace

namespace {

void criterion9(Outcome& o) {
  const double g3 = bound_g(3);
  o.require(std::abs(g3 - 3.1414) < 1e-3, "g(3) = " + std::to_string(g3));
  o.detail << "g(3) = " << std::setprecision(6) << g3 << ", bound(30,3) = 2^" << std::setprecision(4)
           << theoretical_bound(30, 3);
}

void criterion10(Outcome& o) {
  const auto r = count_triangulations(gen_grid(6, 6));
  const double reference = 69908, got = static_cast<double>(r.stats.subproblems);
  o.require(got >= reference / 10 && got <= reference * 10, "6x6 subproblems " + std::to_string(r.stats.subproblems));
  o.detail << "6x6 subproblems " << r.stats.subproblems << " vs reference " << reference;
}

void criterion11(Outcome& o) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 12 + 3 * static_cast<int>(seed);
    const auto three = gen_three_layers(n, seed);
    o.require(layer_count(three) == 3, "three-layers n=" + std::to_string(n) + " has wrong layer count");
    o.require(three == gen_three_layers(n, seed), "three-layers not deterministic");
    const auto sq = gen_square(n, seed);
    o.require(validate_general_position(sq).ok_for_cdt, "square set not in general position");
    o.require(sq == gen_square(n, seed), "square not deterministic");
  }
  for (int n = 3; n <= 30; ++n)
    o.require(layer_count(gen_max_layers(n)) == (n + 2) / 3, "max-layers n=" + std::to_string(n));
  if (o.pass)
    o.detail << "generator families verified; seeded substitutes for the original random sets, so published "
                "per-instance tables are compared by trend only";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"grid counts", criterion1},          {"convex Catalan", criterion2},
      {"triangulations vs oracle", criterion3}, {"matchings vs oracle", criterion4},
      {"cycles vs oracle", criterion5},     {"restricted triangulations", criterion6},
      {"CDT invariants and injectivity", criterion7}, {"labeling invariance", criterion8},
      {"bound constant", criterion9},       {"subproblem count", criterion10},
      {"instance families", criterion11}};
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    const auto t = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first << ": "
              << o.detail.str() << " [" << std::fixed << std::setprecision(1) << seconds_since(t) << "s]"
              << std::endl;
  }
  return failures ? 1 : 0;
}
