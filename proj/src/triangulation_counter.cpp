#include "cfs/triangulation_counter.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cfs/onion.hpp"

namespace cfs {

struct TriangulationCounter::Frame {
  int x = 0;
  int y = 0;
  const std::vector<int>* px = nullptr;
  const std::vector<int>* py = nullptr;
  int ix = -1;  // merge vertex index in px, -1 when the paths never meet
  int iy = -1;
  std::vector<int> walk;
  std::vector<std::uint64_t> bits;  // walk edges by segment id
  std::vector<int> sn;              // -1 off the walk, 0 unconstrained, else sn label
  std::vector<int> from_x;          // index in px for walk vertices taken from px
  std::vector<int> from_y;
};

namespace {

void check_points(std::span<const Point> points) {
  if (points.size() < 3) throw DegenerateInputError("need at least 3 points");
  std::set<std::pair<Rational, Rational>> seen;
  for (const auto& p : points)
    if (!seen.emplace(p.x, p.y).second) throw DegenerateInputError("coinciding points");
  const auto& a = points[0];
  bool flat = true;
  for (std::size_t i = 1; i < points.size() && flat; ++i)
    for (std::size_t j = i + 1; j < points.size() && flat; ++j)
      if (orientation(a, points[i], points[j]) != Orientation::COLLINEAR) flat = false;
  if (flat) throw DegenerateInputError("all points are collinear");
}

void put(std::string& key, int v) {
  key.push_back(static_cast<char>(v & 0xff));
  key.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

TriangulationCounter::TriangulationCounter(std::span<const Point> points, CountOptions options)
    : points_(points.begin(), points.end()), options_(options) {
  check_points(points_);
  decomp_ = relabel_within_layers(compute_onion(points_), options_.labeling_seed);
  inst_ = std::make_unique<CountingInstance>(points_, decomp_);
}

void TriangulationCounter::restrict_to(std::span<const std::pair<int, int>> edges) {
  const int n = inst_->size();
  allowed_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::invalid_argument("edge index out of range");
    const int a = inst_->label_of_index(i), b = inst_->label_of_index(j);
    allowed_[a * (n + 1) + b] = allowed_[b * (n + 1) + a] = 1;
  }
}

bool TriangulationCounter::allowed(int a, int b) const {
  return allowed_.empty() || allowed_[a * (inst_->size() + 1) + b] != 0;
}

TriangulationCounter::Frame TriangulationCounter::frame(int x, int y, const std::vector<int>& px,
                                                        const std::vector<int>& py) const {
  const CountingInstance& in = *inst_;
  Frame f;
  f.x = x;
  f.y = y;
  f.px = &px;
  f.py = &py;
  for (int j = 0; j < static_cast<int>(py.size()) && f.iy < 0; ++j)
    for (int i = 0; i < static_cast<int>(px.size()); ++i)
      if (px[i] == py[j]) {
        f.ix = i;
        f.iy = j;
        break;
      }

  const int n = in.size();
  f.sn.assign(n + 1, -1);
  f.from_x.assign(n + 1, -1);
  f.from_y.assign(n + 1, -1);
  auto next_of = [](const std::vector<int>& p, int i) {
    return i + 1 < static_cast<int>(p.size()) ? p[i + 1] : 0;
  };

  f.walk.push_back(x);
  f.sn[x] = next_of(px, 0);
  f.from_x[x] = 0;
  const int ylast = f.iy >= 0 ? f.iy : static_cast<int>(py.size()) - 1;
  for (int j = 0; j <= ylast; ++j) {
    if (py[j] == x) break;
    f.walk.push_back(py[j]);
    f.sn[py[j]] = next_of(py, j);
    f.from_y[py[j]] = j;
  }
  if (f.iy >= 0) {
    for (int i = f.ix - 1; i >= 1; --i) {
      f.walk.push_back(px[i]);
      f.sn[px[i]] = next_of(px, i);
      f.from_x[px[i]] = i;
    }
  } else {
    const auto& hull = in.hull();
    const int h = static_cast<int>(hull.size());
    for (int p = (in.hull_pos(py.back()) + 1) % h; hull[p] != px.back(); p = (p + 1) % h) {
      f.walk.push_back(hull[p]);
      f.sn[hull[p]] = 0;
    }
    for (int i = static_cast<int>(px.size()) - 1; i >= 1; --i) {
      f.walk.push_back(px[i]);
      f.sn[px[i]] = next_of(px, i);
      f.from_x[px[i]] = i;
    }
  }
  if (f.walk.size() < 3) return f;

  f.bits.assign(in.words(), 0);
  for (std::size_t i = 0; i < f.walk.size(); ++i) {
    const int sid = in.segment_id(f.walk[i], f.walk[(i + 1) % f.walk.size()]);
    f.bits[sid / 64] |= std::uint64_t{1} << (sid % 64);
  }
  return f;
}

bool TriangulationCounter::apex_ok(const Frame& f, int z) const {
  const CountingInstance& in = *inst_;
  const int x = f.x, y = f.y;
  if (z == x || z == y || in.orient(x, y, z) <= 0 || !in.empty_triangle(x, y, z)) return false;
  if (!allowed(x, z) || !allowed(z, y)) return false;
  if (f.sn[x] > 0 && z < f.sn[x]) return false;
  if (f.sn[y] > 0 && z < f.sn[y]) return false;
  if (f.sn[z] > 0 && (x < f.sn[z] || y < f.sn[z])) return false;
  return !in.crosses_any(in.segment_id(x, z), f.bits) && !in.crosses_any(in.segment_id(z, y), f.bits);
}

void TriangulationCounter::complete_paths(const Frame& f, int z,
                                          std::vector<std::vector<int>>& out) const {
  const CountingInstance& in = *inst_;
  auto suffix = [&](int u) {
    if (f.from_x[u] >= 0) return std::vector<int>(f.px->begin() + f.from_x[u], f.px->end());
    if (f.from_y[u] >= 0) return std::vector<int>(f.py->begin() + f.from_y[u], f.py->end());
    return std::vector<int>{u};
  };
  if (f.sn[z] >= 0) {
    out.push_back(suffix(z));
    return;
  }

  std::vector<std::uint64_t> bits = f.bits;
  auto toggle = [&](int sid) { bits[sid / 64] ^= std::uint64_t{1} << (sid % 64); };
  toggle(in.segment_id(f.x, z));
  toggle(in.segment_id(z, f.y));
  std::vector<int> path{z};

  auto dfs = [&](auto&& self, int v) -> void {
    const int limit = in.first_label_of_layer(in.layer(v));
    for (int u = 1; u < limit; ++u) {
      if (!in.empty_segment(v, u) || !allowed(v, u)) continue;
      if (v == z && (f.x < u || f.y < u)) continue;
      const int sid = in.segment_id(v, u);
      if (in.crosses_any(sid, bits)) continue;
      if (f.sn[u] >= 0) {
        std::vector<int> full = path;
        const auto rest = suffix(u);
        full.insert(full.end(), rest.begin(), rest.end());
        out.push_back(std::move(full));
        continue;
      }
      if (in.layer(u) == 1) continue;
      toggle(sid);
      path.push_back(u);
      self(self, u);
      path.pop_back();
      toggle(sid);
    }
  };
  dfs(dfs, z);
}

BigCount TriangulationCounter::solve(int x, int y, const std::vector<int>& px,
                                     const std::vector<int>& py) {
  const Frame f = frame(x, y, px, py);
  if (f.walk.size() < 3) return 1;
  ++stats_.calls;

  std::string key;
  if (options_.memoize) {
    const int xl = f.ix >= 0 ? f.ix : static_cast<int>(px.size()) - 1;
    const int yl = f.iy >= 0 ? f.iy : static_cast<int>(py.size()) - 1;
    for (int i = 0; i <= xl; ++i) put(key, px[i]);
    put(key, 0xffff);
    for (int j = 0; j <= yl; ++j) put(key, py[j]);
    if (f.iy >= 0) put(key, f.iy + 1 < static_cast<int>(py.size()) ? py[f.iy + 1] : 0);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }

  BigCount total = 0;
  std::vector<std::vector<int>> paths;
  for (int z = 1; z <= inst_->size(); ++z) {
    if (!apex_ok(f, z)) continue;
    paths.clear();
    complete_paths(f, z, paths);
    for (const auto& pz : paths) {
      BigCount left = solve(x, z, px, pz);
      if (left == 0) continue;
      total += left * solve(z, y, pz, py);
    }
  }

  if (options_.memoize) {
    memo_.emplace(std::move(key), total);
    stats_.subproblems = static_cast<std::int64_t>(memo_.size());
    if (stats_.subproblems > options_.memo_cap)
      throw ResourceLimitError("memo table exceeded " + std::to_string(options_.memo_cap) + " entries",
                               stats_);
  }
  return total;
}

CountResult TriangulationCounter::count() {
  const auto start = std::chrono::steady_clock::now();
  memo_.clear();
  stats_ = {};
  const SnRegion root = root_region();
  CountResult r;
  try {
    r.count = allowed(root.x, root.y) ? solve(root.x, root.y, root.left_path.vertices, root.right_path.vertices)
                                      : BigCount(0);
  } catch (ResourceLimitError& e) {
    e.stats.elapsed = std::chrono::steady_clock::now() - start;
    e.stats.peak_memo_bytes = stats_.subproblems * 96;
    memo_.clear();
    throw;
  }
  stats_.subproblems = static_cast<std::int64_t>(memo_.size());
  stats_.elapsed = std::chrono::steady_clock::now() - start;
  std::int64_t bytes = 0;
  for (const auto& [k, v] : memo_) bytes += static_cast<std::int64_t>(k.capacity() + 64);
  stats_.peak_memo_bytes = bytes;
  r.stats = stats_;
  memo_.clear();
  return r;
}

SnRegion TriangulationCounter::root_region() const {
  const auto& hull = inst_->hull();
  SnRegion r;
  r.x = hull[0];
  r.y = hull[1 % hull.size()];
  r.left_path.vertices = {r.x};
  r.right_path.vertices = {r.y};
  return r;
}

std::vector<int> TriangulationCounter::boundary(const SnRegion& region) const {
  return frame(region.x, region.y, region.left_path.vertices, region.right_path.vertices).walk;
}

std::string TriangulationCounter::canonical_key(const SnRegion& region) const {
  const auto& px = region.left_path.vertices;
  const auto& py = region.right_path.vertices;
  const Frame f = frame(region.x, region.y, px, py);
  std::string key;
  const int xl = f.ix >= 0 ? f.ix : static_cast<int>(px.size()) - 1;
  const int yl = f.iy >= 0 ? f.iy : static_cast<int>(py.size()) - 1;
  for (int i = 0; i <= xl; ++i) key += std::to_string(px[i]) + ' ';
  key += '|';
  for (int j = 0; j <= yl; ++j) key += ' ' + std::to_string(py[j]);
  if (f.iy >= 0) key += " | " + std::to_string(f.iy + 1 < static_cast<int>(py.size()) ? py[f.iy + 1] : 0);
  return key;
}

std::vector<int> TriangulationCounter::enumerate_apexes(const SnRegion& region) const {
  const Frame f = frame(region.x, region.y, region.left_path.vertices, region.right_path.vertices);
  std::vector<int> out;
  if (f.walk.size() < 3) return out;
  for (int z = 1; z <= inst_->size(); ++z)
    if (apex_ok(f, z)) out.push_back(z);
  return out;
}

std::vector<DescendingPath> TriangulationCounter::enumerate_descending_portions(
    int z, const SnRegion& region) const {
  const Frame f = frame(region.x, region.y, region.left_path.vertices, region.right_path.vertices);
  std::vector<DescendingPath> out;
  if (f.walk.size() < 3 || !apex_ok(f, z)) return out;
  std::vector<std::vector<int>> paths;
  complete_paths(f, z, paths);
  for (auto& p : paths) {
    std::size_t end = 0;
    while (f.sn[p[end]] < 0) ++end;
    p.resize(end + 1);
    out.push_back({std::move(p)});
  }
  return out;
}

CountResult count_triangulations(std::span<const Point> points, CountOptions options) {
  TriangulationCounter counter(points, options);
  return counter.count();
}

CountResult count_restricted_triangulations(std::span<const Point> points,
                                            std::span<const std::pair<int, int>> edges,
                                            CountOptions options) {
  TriangulationCounter counter(points, options);
  counter.restrict_to(edges);
  return counter.count();
}

double bound_f(double x) { return (x * x * x + 3 * x * x + 2 * x + 2) / 2; }

double bound_g(double x) { return std::pow(bound_f(x), 1 / x); }

double theoretical_bound(int n, int k) {
  if (k < 1 || n < k) throw std::invalid_argument("theoretical_bound needs n >= k >= 1");
  const double x = static_cast<double>(n) / k;
  return 2 * std::log2(static_cast<double>(k)) + n * std::log2(bound_g(x));
}

}  // namespace cfs
