#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cfs/brute_oracle.hpp"
#include "cfs/onion.hpp"
#include "cfs/pointset.hpp"
#include "cfs/triangulation_counter.hpp"
#include "support.hpp"

using namespace cfs;

namespace {

BigCount catalan(int m) {
  BigCount c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Counts the emitted structures and checks there are no duplicates.
struct Collector {
  std::set<std::vector<Edge>> seen;
  int emitted = 0;
  OracleOptions options() {
    OracleOptions o;
    o.sink = [this](const std::vector<Edge>& s) {
      seen.insert(s);
      ++emitted;
    };
    return o;
  }
};

}  // namespace

TEST_CASE("triangulation oracle") {
  CHECK(enumerate_triangulations(gen_convex(4)).count == 2);
  for (int n = 3; n <= 12; ++n) CHECK(enumerate_triangulations(gen_convex(n)).count == catalan(n - 2));
  const auto grid = gen_grid(3, 3);
  CHECK(enumerate_triangulations(grid).count == count_triangulations(grid).count);
  CHECK(enumerate_triangulations(test::pts({{0, 0}, {6, 0}, {0, 6}, {1, 1}})).count == 1);
}

TEST_CASE("oracles emit each structure once") {
  const auto p = gen_square(8, 21);
  Collector t, m, c;
  CHECK(enumerate_triangulations(p, t.options()).count == t.emitted);
  CHECK(static_cast<int>(t.seen.size()) == t.emitted);
  CHECK(enumerate_matchings(p, false, m.options()).count == m.emitted);
  CHECK(static_cast<int>(m.seen.size()) == m.emitted);
  CHECK(enumerate_polygonizations(p, c.options()).count == c.emitted);
  CHECK(static_cast<int>(c.seen.size()) == c.emitted);
  const int h = static_cast<int>(compute_onion(p).layers.front().size());
  for (const auto& tri : t.seen) CHECK(static_cast<int>(tri.size()) == 3 * 8 - 3 - h);
  for (const auto& poly : c.seen) CHECK(poly.size() == 8);
}

TEST_CASE("matching oracle") {
  const auto two = test::pts({{0, 0}, {1, 3}});
  CHECK(enumerate_matchings(two, false).count == 2);
  CHECK(enumerate_matchings(two, true).count == 1);
  CHECK(enumerate_matchings(gen_convex(4), false).count == 9);
  CHECK(enumerate_matchings(gen_convex(4), true).count == 2);
  CHECK(enumerate_matchings(gen_convex(6), true).count == 5);
  CHECK(enumerate_matchings(gen_convex(8), true).count == 14);
  CHECK(enumerate_matchings(gen_convex(5), true).count == 0);
}

TEST_CASE("polygonization oracle") {
  CHECK(enumerate_polygonizations(gen_convex(5)).count == 1);
  CHECK(enumerate_polygonizations(test::pts({{0, 0}, {10, 1}, {3, 9}, {4, 3}})).count == 3);
  CHECK_THROWS_AS(enumerate_polygonizations(test::pts({{0, 0}, {1, 1}})), DegenerateInputError);
}

TEST_CASE("restricted oracle") {
  const auto p = gen_square(8, 4);
  std::vector<Edge> all;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) all.emplace_back(a, b);
  CHECK(enumerate_restricted(p, all).count == enumerate_triangulations(p).count);
  const auto hull = compute_onion(p).layers.front();
  REQUIRE(hull.size() < 8);
  std::vector<Edge> sides;
  for (std::size_t i = 0; i < hull.size(); ++i) sides.push_back(make_edge(hull[i], hull[(i + 1) % hull.size()]));
  CHECK(enumerate_restricted(p, sides).count == 0);
  CHECK_THROWS_AS(enumerate_restricted(p, std::vector<Edge>{{0, 8}}), std::invalid_argument);
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(enumerate_triangulations(gen_convex(13)), OracleRefusal);
  CHECK_THROWS_AS(enumerate_matchings(gen_convex(11), false), OracleRefusal);
  CHECK_THROWS_AS(enumerate_polygonizations(gen_convex(11)), OracleRefusal);
  OracleOptions wide;
  wide.cap = 13;
  CHECK(enumerate_triangulations(gen_convex(13), wide).count == catalan(11));
}

TEST_CASE("oracle counts ignore point order") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto p = gen_square(7, seed);
    const auto t = enumerate_triangulations(p).count;
    const auto m = enumerate_matchings(p, false).count;
    const auto c = enumerate_polygonizations(p).count;
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(enumerate_triangulations(p).count == t);
    CHECK(enumerate_matchings(p, false).count == m);
    CHECK(enumerate_polygonizations(p).count == c);
  }
}
