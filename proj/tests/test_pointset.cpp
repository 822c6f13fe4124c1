#include <doctest.h>

#include <filesystem>

#include "cfs/onion.hpp"
#include "cfs/pointset.hpp"
#include "cfs/triangulation_counter.hpp"

using namespace cfs;

namespace {

int error_line(std::string_view text) {
  try {
    parse_point_set(text);
  } catch (const PointSetParseError& e) {
    return e.line;
  }
  return 0;
}

}  // namespace

TEST_CASE("convex generator") {
  for (int n : {3, 5, 12, 40}) {
    const auto p = gen_convex(n);
    CHECK(static_cast<int>(p.size()) == n);
    CHECK(layer_count(p) == 1);
    CHECK(validate_general_position(p).ok_for_cdt);
  }
  CHECK(count_triangulations(gen_convex(6)).count == 14);
  CHECK_THROWS(gen_convex(2));
}

TEST_CASE("square generator") {
  CHECK(gen_square(20, 3) == gen_square(20, 3));
  CHECK_FALSE(gen_square(20, 3) == gen_square(20, 4));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(validate_general_position(gen_square(15, seed)).ok_for_cdt);
  CHECK(gen_square(1, 9).size() == 1);
}

TEST_CASE("three-layer generator") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto p = gen_three_layers(9 + static_cast<int>(seed) * 4, seed);
    CHECK(layer_count(p) == 3);
    CHECK(validate_general_position(p).ok_for_cdt);
  }
  CHECK(gen_three_layers(30, 7) == gen_three_layers(30, 7));
  CHECK_THROWS(gen_three_layers(8, 1));
}

TEST_CASE("max-layer generator") {
  CHECK(layer_count(gen_max_layers(9)) == 3);
  CHECK(layer_count(gen_max_layers(25)) == 9);
  for (int n = 3; n <= 30; ++n) {
    const auto p = gen_max_layers(n);
    CHECK(static_cast<int>(p.size()) == n);
    CHECK(layer_count(p) == (n + 2) / 3);
  }
  CHECK(validate_general_position(gen_max_layers(25)).ok_for_cdt);
}

TEST_CASE("grid generator") {
  const auto g = gen_grid(6, 6);
  CHECK(g.size() == 36);
  CHECK(layer_count(g) == 3);
  CHECK(layer_count(gen_grid(7, 12)) == 4);
  CHECK(layer_count(gen_grid(2, 2)) == 1);
  CHECK(count_triangulations(gen_grid(2, 2)).count == 2);
  CHECK_THROWS(gen_grid(1, 5));
}

TEST_CASE("parsing") {
  const auto tri = parse_point_set("3\n0 0\n1 0\n0 1\n");
  REQUIRE(tri.size() == 3);
  CHECK(tri[1].x == 1);
  CHECK(tri[2].id == 2);

  const auto r = parse_point_set("# header comment\n2\n1/3 2/7   # trailing\n\n-4 +5\n");
  CHECK(r[0].x == Rational(1, 3));
  CHECK(r[0].y == Rational(2, 7));
  CHECK(r[1].x == -4);
  CHECK(r[1].y == 5);
  CHECK(parse_point_set("1\n2/4 0\n")[0].x == Rational(1, 2));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("3\n0 0\n1 0\n0 0\n") == 4);
  CHECK(error_line("2\n0 0\n1 x\n") == 3);
  CHECK(error_line("2\n0 0\n1/0 1\n") == 3);
  CHECK(error_line("2\n0 0 0\n1 1\n") == 2);
  CHECK(error_line("x\n") == 1);
  CHECK(error_line("") == 1);
  CHECK(error_line("3\n0 0\n1 1\n") == 3);
  CHECK(error_line("1\n0 0\n5 5\n") == 3);
  CHECK(error_line("1\n0.5 1\n") == 2);
}

TEST_CASE("round trip") {
  for (const auto& p : {gen_square(12, 8), gen_grid(3, 4), gen_convex(7)}) CHECK(parse_point_set(serialize_point_set(p)) == p);
  PointSet q{Point{Rational(-1, 3), Rational(22, 7), 0}, Point{Rational(5), Rational(0), 1}};
  CHECK(parse_point_set(serialize_point_set(q)) == q);

  const auto path = std::filesystem::temp_directory_path() / "cfs_roundtrip.pts";
  write_point_set(path, q);
  CHECK(read_point_set(path) == q);
  std::filesystem::remove(path);
  CHECK_THROWS(read_point_set("/nonexistent/cfs.pts"));
}

TEST_CASE("edge files") {
  const auto e = parse_edges("# allowed\n0 1\n1 2  # side\n\n2 0\n", 3);
  CHECK(e == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}});
  CHECK(parse_edges("", 3).empty());
  CHECK_THROWS_AS(parse_edges("0 3\n", 3), PointSetParseError);
  CHECK_THROWS_AS(parse_edges("1 1\n", 3), PointSetParseError);
  CHECK_THROWS_AS(parse_edges("0\n", 3), PointSetParseError);
}
