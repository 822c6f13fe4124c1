#include "cfs/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace cfs {

namespace {

using Int256 = boost::multiprecision::int256_t;

int sign_of(const Rational& r) { return r.sign(); }

Rational cross_r(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool lex_less(const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

Orientation orientation(const Point& a, const Point& b, const Point& c) {
  return static_cast<Orientation>(sign_of(cross_r(a, b, c)));
}

CircleSide in_circle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o = sign_of(cross_r(a, b, c));
  if (o == 0) throw DegenerateInputError("in_circle: a, b, c are collinear");
  const Rational adx = a.x - d.x, ady = a.y - d.y;
  const Rational bdx = b.x - d.x, bdy = b.y - d.y;
  const Rational cdx = c.x - d.x, cdy = c.y - d.y;
  const Rational det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                       (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  // The determinant is positive for d inside when abc is CCW.
  return static_cast<CircleSide>(sign_of(det) * o);
}

bool segments_properly_cross(const Segment& s1, const Segment& s2) {
  const int o1 = sign_of(cross_r(s1.a, s1.b, s2.a));
  const int o2 = sign_of(cross_r(s1.a, s1.b, s2.b));
  const int o3 = sign_of(cross_r(s2.a, s2.b, s1.a));
  const int o4 = sign_of(cross_r(s2.a, s2.b, s1.b));
  if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
    // Touching configurations. Collinear overlap of two segments counts as a
    // crossing when they share more than an endpoint.
    if (o1 == 0 && o2 == 0) {
      auto key = [&](const Point& p) {
        return s1.a.x != s1.b.x ? p.x : p.y;
      };
      Rational lo1 = key(s1.a), hi1 = key(s1.b);
      if (hi1 < lo1) std::swap(lo1, hi1);
      Rational lo2 = key(s2.a), hi2 = key(s2.b);
      if (hi2 < lo2) std::swap(lo2, hi2);
      return std::max(lo1, lo2) < std::min(hi1, hi2);
    }
    return false;
  }
  return o1 != o2 && o3 != o4;
}

std::vector<Point> convex_hull(std::span<const Point> points) {
  if (points.empty()) return {};
  const auto lattice = to_lattice(points);
  std::vector<int> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Point> out;
  for (int i : hull_indices(lattice, all)) out.push_back(points[static_cast<std::size_t>(i)]);
  return out;
}

bool empty_triangle(const Point& a, const Point& b, const Point& c,
                    std::span<const Point> points) {
  if (orientation(a, b, c) == Orientation::COLLINEAR) return false;
  const Orientation ref = orientation(a, b, c);
  for (const Point& p : points) {
    if (p.id == a.id || p.id == b.id || p.id == c.id) continue;
    const Orientation o1 = orientation(a, b, p);
    const Orientation o2 = orientation(b, c, p);
    const Orientation o3 = orientation(c, a, p);
    auto ok = [&](Orientation o) { return o == ref || o == Orientation::COLLINEAR; };
    if (ok(o1) && ok(o2) && ok(o3)) return false;
  }
  return true;
}

GeneralPositionReport validate_general_position(std::span<const Point> points) {
  GeneralPositionReport r;
  const auto v = to_lattice(points);
  const int n = static_cast<int>(v.size());
  bool any_turn = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (orient_sign(v[i], v[j], v[k]) == 0)
          ++r.collinear_triples;
        else
          any_turn = true;
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int o = orient_sign(v[i], v[j], v[k]);
        if (o == 0) continue;
        for (int l = k + 1; l < n; ++l) {
          const int s = o > 0 ? in_circle_sign(v[i], v[j], v[k], v[l])
                              : in_circle_sign(v[i], v[k], v[j], v[l]);
          if (s == 0) ++r.cocircular_quadruples;
        }
      }
  r.ok_for_triangulations = any_turn;
  r.ok_for_cdt = r.collinear_triples == 0 && r.cocircular_quadruples == 0;
  return r;
}

PointSet perturb(std::span<const Point> points, std::uint64_t seed, std::int64_t denominator) {
  if (denominator <= 0) throw std::invalid_argument("perturb: denominator must be positive");
  constexpr int kAttempts = 64;
  constexpr std::int64_t kSteps = std::int64_t{1} << 20;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    PointSet out(points.begin(), points.end());
    for (Point& p : out) {
      // offset = (u - kSteps/2) / (2 * kSteps * denominator), |offset| < 1/(2 denominator)
      const auto ux = static_cast<std::int64_t>(rng() % kSteps) - kSteps / 2;
      const auto uy = static_cast<std::int64_t>(rng() % kSteps) - kSteps / 2;
      const Rational scale(BigInt(1), BigInt(2) * kSteps * denominator);
      p.x += Rational(ux) * scale;
      p.y += Rational(uy) * scale;
    }
    bool distinct = true;
    std::set<std::pair<Rational, Rational>> seen;
    for (const Point& p : out) distinct = distinct && seen.emplace(p.x, p.y).second;
    if (distinct && validate_general_position(out).ok_for_cdt) return out;
  }
  throw DegenerateInputError("perturb: no general-position perturbation found");
}

std::vector<Vec2> to_lattice(std::span<const Point> points) {
  BigInt lcm = 1;
  for (const Point& p : points) {
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(p.x));
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(p.y));
  }
  std::vector<Vec2> out;
  out.reserve(points.size());
  const BigInt limit = kLatticeLimit;
  for (const Point& p : points) {
    const BigInt x = boost::multiprecision::numerator(p.x) * (lcm / boost::multiprecision::denominator(p.x));
    const BigInt y = boost::multiprecision::numerator(p.y) * (lcm / boost::multiprecision::denominator(p.y));
    if (abs(x) > limit || abs(y) > limit)
      throw DegenerateInputError("coordinates too large for exact lattice predicates");
    out.push_back({x.convert_to<std::int64_t>(), y.convert_to<std::int64_t>()});
  }
  std::vector<Vec2> sorted = out;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("point set contains coinciding points");
  return out;
}

int in_circle_sign(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const Int256 adx = Int256(a.x) - d.x, ady = Int256(a.y) - d.y;
  const Int256 bdx = Int256(b.x) - d.x, bdy = Int256(b.y) - d.y;
  const Int256 cdx = Int256(c.x) - d.x, cdy = Int256(c.y) - d.y;
  const Int256 det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                     (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                     (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return det.sign();
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool properly_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orient_sign(a, b, c);
  const int o2 = orient_sign(a, b, d);
  const int o3 = orient_sign(c, d, a);
  const int o4 = orient_sign(c, d, b);
  if (o1 == 0 && o2 == 0) {
    // Collinear: overlapping in more than a point counts as crossing.
    auto key = [&](const Vec2& p) { return a.x != b.x ? p.x : p.y; };
    std::int64_t lo1 = key(a), hi1 = key(b);
    if (hi1 < lo1) std::swap(lo1, hi1);
    std::int64_t lo2 = key(c), hi2 = key(d);
    if (hi2 < lo2) std::swap(lo2, hi2);
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  }
  if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) return false;
  return o1 != o2 && o3 != o4;
}

int triangle_location(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  int s1 = orient_sign(a, b, p), s2 = orient_sign(b, c, p), s3 = orient_sign(c, a, p);
  if (orient_sign(a, b, c) < 0) {
    s1 = -s1;
    s2 = -s2;
    s3 = -s3;
  }
  if (s1 < 0 || s2 < 0 || s3 < 0) return -1;
  if (s1 == 0 || s2 == 0 || s3 == 0) return 0;
  return 1;
}

std::vector<int> hull_indices(std::span<const Vec2> pts, std::span<const int> subset) {
  std::vector<int> idx(subset.begin(), subset.end());
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return lex_less(pts[i], pts[j]); });
  if (idx.size() <= 2) return idx;

  // Strict hull by monotone chain, then reinsert collinear boundary points.
  std::vector<int> h(2 * idx.size());
  std::size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const int i = idx[t];
    while (k >= lower && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  if (h.size() < 3) {
    // All points collinear: every point is on the boundary.
    return idx;
  }

  std::vector<int> out;
  for (std::size_t e = 0; e < h.size(); ++e) {
    const Vec2& a = pts[h[e]];
    const Vec2& b = pts[h[(e + 1) % h.size()]];
    out.push_back(h[e]);
    std::vector<int> mid;
    for (int i : idx)
      if (i != h[e] && i != h[(e + 1) % h.size()] && on_segment(a, b, pts[i])) mid.push_back(i);
    std::sort(mid.begin(), mid.end(), [&](int i, int j) {
      const auto di = std::abs(pts[i].x - a.x) + std::abs(pts[i].y - a.y);
      const auto dj = std::abs(pts[j].x - a.x) + std::abs(pts[j].y - a.y);
      return di < dj;
    });
    out.insert(out.end(), mid.begin(), mid.end());
  }
  return out;
}

}  // namespace cfs
