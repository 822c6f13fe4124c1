#include "cfs/brute_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cfs {

namespace {

using Clock = std::chrono::steady_clock;

void check_cap(std::span<const Point> points, int cap, int fallback) {
  const int limit = cap > 0 ? cap : fallback;
  if (static_cast<int>(points.size()) > limit)
    throw OracleRefusal("oracle refuses " + std::to_string(points.size()) + " points (cap " +
                        std::to_string(limit) + ")");
}

bool blocked_segment(const std::vector<Vec2>& p, int a, int b) {
  for (int c = 0; c < static_cast<int>(p.size()); ++c)
    if (c != a && c != b && on_segment(p[a], p[b], p[c])) return true;
  return false;
}

class TriangulationWalk {
 public:
  TriangulationWalk(std::span<const Point> points, std::span<const Edge> allowed, const OracleOptions& options)
      : p_(to_lattice(points)), n_(static_cast<int>(points.size())), sink_(options.sink) {
    if (!allowed.empty()) {
      ok_.assign(static_cast<std::size_t>(n_) * n_, 0);
      for (auto [a, b] : allowed) ok_[a * n_ + b] = ok_[b * n_ + a] = 1;
    }
  }

  void restrict_all() { ok_.assign(static_cast<std::size_t>(n_) * n_, 0); }

  BigCount run() {
    std::vector<int> all(n_);
    std::iota(all.begin(), all.end(), 0);
    const auto hull = hull_indices(p_, all);
    bool flat = true;
    for (int i = 2; i < n_ && flat; ++i)
      if (orient_sign(p_[0], p_[1], p_[i]) != 0) flat = false;
    if (flat) throw DegenerateInputError("all points are collinear");
    const int h = static_cast<int>(hull.size());
    for (int i = 0; i < h; ++i) front_.insert({hull[i], hull[(i + 1) % h]});
    total_ = 0;
    step();
    return total_;
  }

 private:
  bool allowed(int a, int b) const { return ok_.empty() || ok_[a * n_ + b]; }

  bool empty(int a, int b, int c) const {
    for (int q = 0; q < n_; ++q)
      if (q != a && q != b && q != c && triangle_location(p_[a], p_[b], p_[c], p_[q]) >= 0) return false;
    return true;
  }

  bool crosses(int a, int b) const {
    const Edge self = make_edge(a, b);
    for (const auto& e : edges_)
      if (e != self && properly_cross(p_[a], p_[b], p_[e.first], p_[e.second])) return true;
    return false;
  }

  void step() {
    if (front_.empty()) {
      ++total_;
      if (sink_) sink_(std::vector<Edge>(edges_.begin(), edges_.end()));
      return;
    }
    const auto [a, b] = *front_.begin();
    for (int c = 0; c < n_; ++c) {
      if (c == a || c == b || orient_sign(p_[a], p_[b], p_[c]) <= 0) continue;
      if (!allowed(a, b) || !allowed(b, c) || !allowed(c, a)) continue;
      if (filled_.count({b, c}) || filled_.count({c, a}) || !empty(a, b, c)) continue;
      if (crosses(b, c) || crosses(c, a)) continue;

      const std::set<std::pair<int, int>> front_before = front_;
      const std::set<Edge> edges_before = edges_;
      for (auto [u, v] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
        filled_.insert({u, v});
        edges_.insert(make_edge(u, v));
        if (front_.count({u, v})) front_.erase({u, v});
        else front_.insert({v, u});
      }
      step();
      for (auto [u, v] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) filled_.erase({u, v});
      front_ = front_before;
      edges_ = edges_before;
    }
  }

  std::vector<Vec2> p_;
  int n_;
  std::vector<std::uint8_t> ok_;
  std::function<void(const std::vector<Edge>&)> sink_;
  std::set<std::pair<int, int>> front_;   // unfilled side on the left
  std::set<std::pair<int, int>> filled_;  // directed edges of placed triangles
  std::set<Edge> edges_;
  BigCount total_;
};

}  // namespace

EnumerationResult enumerate_triangulations(std::span<const Point> points, const OracleOptions& options) {
  check_cap(points, options.cap, kTriangulationCap);
  if (points.size() < 3) throw DegenerateInputError("need at least 3 points");
  const auto start = Clock::now();
  TriangulationWalk walk(points, {}, options);
  EnumerationResult r;
  r.count = walk.run();
  r.elapsed = Clock::now() - start;
  return r;
}

EnumerationResult enumerate_restricted(std::span<const Point> points, std::span<const Edge> allowed,
                                       const OracleOptions& options) {
  check_cap(points, options.cap, kTriangulationCap);
  if (points.size() < 3) throw DegenerateInputError("need at least 3 points");
  const int n = static_cast<int>(points.size());
  for (auto [a, b] : allowed)
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("edge index out of range");
  const auto start = Clock::now();
  TriangulationWalk walk(points, allowed, options);
  if (allowed.empty()) walk.restrict_all();
  EnumerationResult r;
  r.count = walk.run();
  r.elapsed = Clock::now() - start;
  return r;
}

EnumerationResult enumerate_matchings(std::span<const Point> points, bool perfect_only,
                                      const OracleOptions& options) {
  check_cap(points, options.cap, kMatchingCap);
  const auto start = Clock::now();
  const int n = static_cast<int>(points.size());
  const auto p = to_lattice(points);
  std::vector<char> used(n, 0);
  std::vector<Edge> chosen;
  BigCount total = 0;
  auto rec = [&](auto&& self, int i) -> void {
    while (i < n && used[i]) ++i;
    if (i == n) {
      ++total;
      if (options.sink) {
        std::vector<Edge> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        options.sink(sorted);
      }
      return;
    }
    used[i] = 1;
    if (!perfect_only) self(self, i + 1);
    for (int j = i + 1; j < n; ++j) {
      if (used[j] || blocked_segment(p, i, j)) continue;
      bool ok = true;
      for (const auto& [u, v] : chosen)
        if (properly_cross(p[i], p[j], p[u], p[v])) ok = false;
      if (!ok) continue;
      used[j] = 1;
      chosen.emplace_back(i, j);
      self(self, i + 1);
      chosen.pop_back();
      used[j] = 0;
    }
    used[i] = 0;
  };
  rec(rec, 0);
  EnumerationResult r;
  r.count = total;
  r.elapsed = Clock::now() - start;
  return r;
}

EnumerationResult enumerate_polygonizations(std::span<const Point> points, const OracleOptions& options) {
  check_cap(points, options.cap, kPolygonizationCap);
  const int n = static_cast<int>(points.size());
  if (n < 3) throw DegenerateInputError("a polygon needs at least 3 points");
  const auto start = Clock::now();
  const auto p = to_lattice(points);

  std::vector<int> order{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  BigCount total = 0;
  // With no point inside any edge, edges sharing an endpoint cannot overlap.
  auto fits = [&](int a, int b) {
    if (blocked_segment(p, a, b)) return false;
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
      if (properly_cross(p[a], p[b], p[order[k]], p[order[k + 1]])) return false;
    return true;
  };
  auto rec = [&](auto&& self) -> void {
    const int last = order.back();
    if (static_cast<int>(order.size()) == n) {
      if (order[1] > order[n - 1]) return;
      if (!fits(last, order[0])) return;
      ++total;
      if (options.sink) {
        std::vector<Edge> edges;
        for (int k = 0; k < n; ++k) edges.push_back(make_edge(order[k], order[(k + 1) % n]));
        std::sort(edges.begin(), edges.end());
        options.sink(edges);
      }
      return;
    }
    for (int v = 1; v < n; ++v) {
      if (used[v] || !fits(last, v)) continue;
      used[v] = 1;
      order.push_back(v);
      self(self);
      order.pop_back();
      used[v] = 0;
    }
  };
  rec(rec);
  EnumerationResult r;
  r.count = total;
  r.elapsed = Clock::now() - start;
  return r;
}

}  // namespace cfs
