#include "cfs/pointset.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cfs/onion.hpp"

namespace cfs {

namespace {

PointSet to_points(const std::vector<Vec2>& pts) {
  PointSet out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.push_back(Point{Rational(pts[i].x), Rational(pts[i].y), static_cast<int>(i)});
  return out;
}

// q may join pts without creating a repeated point, a collinear triple or a
// cocircular quadruple.
bool fits(const std::vector<Vec2>& pts, const Vec2& q) {
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i)
    if (pts[i] == q) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (orient_sign(pts[i], pts[j], q) == 0) return false;
      for (std::size_t k = j + 1; k < m; ++k)
        if (in_circle_sign(pts[i], pts[j], pts[k], q) == 0) return false;
    }
  return true;
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t range) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(range));
}

Vec2 polar(double r, double theta) {
  return {std::llround(r * std::cos(theta)), std::llround(r * std::sin(theta))};
}

}  // namespace

bool in_general_position(const std::vector<Vec2>& pts) {
  std::vector<Vec2> prefix;
  prefix.reserve(pts.size());
  for (const Vec2& q : pts) {
    if (!fits(prefix, q)) return false;
    prefix.push_back(q);
  }
  return true;
}

PointSet gen_convex(int n) {
  if (n < 3) throw std::invalid_argument("gen_convex needs n >= 3");
  // Radii vary slightly so that no four points are cocircular.
  for (double scale = 1e9;; scale *= 2) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back(polar(scale + 7.0 * i * i, 2 * std::numbers::pi * i / n));
    bool convex = true;
    for (int i = 0; i < n && convex; ++i)
      if (orient_sign(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) <= 0) convex = false;
    if (convex && in_general_position(pts)) return to_points(pts);
    if (scale > 1e15) throw std::runtime_error("gen_convex: no convex snapping found");
  }
}

PointSet gen_square(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_square needs n >= 1");
  constexpr std::int64_t kSide = std::int64_t{1} << 20;
  std::mt19937_64 rng(seed);
  std::vector<Vec2> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Vec2 q{uniform(rng, kSide), uniform(rng, kSide)};
    if (fits(pts, q)) pts.push_back(q);
  }
  return to_points(pts);
}

PointSet gen_three_layers(int n, std::uint64_t seed) {
  if (n < 9) throw std::invalid_argument("gen_three_layers needs n >= 9");
  constexpr double kRadius[3] = {1.0e6, 2.2e6, 4.0e6};
  constexpr int kBudget = 10000;
  std::mt19937_64 rng(seed);
  const int inner = n / 3, middle = n / 3, outer = n - 2 * (n / 3);
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    std::vector<Vec2> pts;
    for (int ring = 0; ring < 3; ++ring) {
      const int want = ring == 0 ? inner : ring == 1 ? middle : outer;
      for (int placed = 0; placed < want;) {
        const double theta = 2 * std::numbers::pi * static_cast<double>(rng() >> 11) / 9007199254740992.0;
        const Vec2 q = polar(kRadius[ring] + static_cast<double>(uniform(rng, 1001)), theta);
        if (!fits(pts, q)) continue;
        pts.push_back(q);
        ++placed;
      }
    }
    PointSet out = to_points(pts);
    if (layer_count(out) == 3) return out;
  }
  throw std::runtime_error("gen_three_layers: retry budget exhausted");
}

PointSet gen_max_layers(int n) {
  if (n < 3) throw std::invalid_argument("gen_max_layers needs n >= 3");
  constexpr double kStep = 1.0e6;
  constexpr double kTwist = 0.01;
  const int triangles = n / 3, leftover = n % 3;
  const int layers = (n + 2) / 3;
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(attempt);
    auto jitter = [&] { return attempt == 0 ? 0 : uniform(rng, 101) - 50; };
    std::vector<Vec2> pts;
    for (int t = triangles - 1; t >= 0; --t) {
      const double r = kStep * (t + 1 + (leftover ? 1 : 0));
      for (int v = 0; v < 3; ++v) {
        Vec2 q = polar(r, std::numbers::pi / 2 + kTwist * t + 2 * std::numbers::pi * v / 3);
        q.x += jitter();
        q.y += jitter();
        pts.push_back(q);
      }
    }
    if (leftover == 1) pts.push_back({jitter(), jitter() + 17});
    if (leftover == 2) {
      pts.push_back({static_cast<std::int64_t>(-kStep / 4) + jitter(), 11 + jitter()});
      pts.push_back({static_cast<std::int64_t>(kStep / 4) + jitter(), -13 + jitter()});
    }
    if (!in_general_position(pts)) continue;
    PointSet out = to_points(pts);
    if (layer_count(out) == layers) return out;
    if (attempt > 1000) throw std::runtime_error("gen_max_layers: no valid configuration found");
  }
}

PointSet gen_grid(int rows, int cols) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("gen_grid needs rows, cols >= 2");
  std::vector<Vec2> pts;
  for (int y = 0; y < rows; ++y)
    for (int x = 0; x < cols; ++x) pts.push_back({x, y});
  return to_points(pts);
}

namespace {

// Splits into (line number, record) pairs with comments and blank lines removed.
std::vector<std::pair<int, std::string>> records(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(no, line);
  }
  return out;
}

bool parse_integer(const std::string& s, BigInt& out) {
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return false;
  out = BigInt(s.substr(i));
  if (s[0] == '-') out = -out;
  return true;
}

Rational parse_number(const std::string& token, int line) {
  const auto slash = token.find('/');
  BigInt num, den = 1;
  const bool ok = slash == std::string::npos
                      ? parse_integer(token, num)
                      : parse_integer(token.substr(0, slash), num) && parse_integer(token.substr(slash + 1), den);
  if (!ok) throw PointSetParseError(line, "malformed number '" + token + "'");
  if (den == 0) throw PointSetParseError(line, "zero denominator in '" + token + "'");
  return Rational(num, den);
}

std::vector<std::string> tokens(const std::string& record) {
  std::istringstream in(record);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

PointSet parse_point_set(std::string_view text) {
  const auto recs = records(text);
  if (recs.empty()) throw PointSetParseError(1, "missing point count");
  const auto head = tokens(recs[0].second);
  BigInt declared;
  if (head.size() != 1 || !parse_integer(head[0], declared) || declared < 0 || declared > 1000000)
    throw PointSetParseError(recs[0].first, "expected a point count");
  const auto n = static_cast<std::size_t>(declared);
  if (recs.size() - 1 != n)
    throw PointSetParseError(recs.size() - 1 < n ? recs.back().first : recs[n + 1].first,
                             "expected " + std::to_string(n) + " point records, found " +
                                 std::to_string(recs.size() - 1));
  PointSet out;
  std::set<std::pair<Rational, Rational>> seen;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& [line, rec] = recs[i];
    const auto t = tokens(rec);
    if (t.size() != 2) throw PointSetParseError(line, "expected two coordinates");
    Point p{parse_number(t[0], line), parse_number(t[1], line), static_cast<int>(i - 1)};
    if (!seen.emplace(p.x, p.y).second) throw PointSetParseError(line, "duplicate point");
    out.push_back(std::move(p));
  }
  return out;
}

std::string serialize_point_set(const PointSet& points) {
  std::ostringstream out;
  out << points.size() << '\n';
  for (const Point& p : points) out << p.x.str() << ' ' << p.y.str() << '\n';
  return out.str();
}

PointSet read_point_set(const std::filesystem::path& path) { return parse_point_set(read_file(path)); }

void write_point_set(const std::filesystem::path& path, const PointSet& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_point_set(points);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::pair<int, int>> parse_edges(std::string_view text, int n) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [line, rec] : records(text)) {
    const auto t = tokens(rec);
    BigInt a, b;
    if (t.size() != 2 || !parse_integer(t[0], a) || !parse_integer(t[1], b))
      throw PointSetParseError(line, "expected two point indices");
    if (a < 0 || b < 0 || a >= n || b >= n) throw PointSetParseError(line, "point index out of range");
    if (a == b) throw PointSetParseError(line, "edge joins a point to itself");
    out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return out;
}

std::vector<std::pair<int, int>> read_edges(const std::filesystem::path& path, int n) {
  return parse_edges(read_file(path), n);
}

}  // namespace cfs
