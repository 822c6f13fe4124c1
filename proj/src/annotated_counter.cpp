#include "cfs/annotated_counter.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "cfs/counting_instance.hpp"

namespace cfs {

namespace {

constexpr double kPi = 3.14159265358979323846;

__int128 dot(const Vec2& a, const Vec2& b) {
  return static_cast<__int128>(a.x) * b.x + static_cast<__int128>(a.y) * b.y;
}

__int128 det(const Vec2& a, const Vec2& b) {
  return static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x;
}

Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

Vec2 direction_at(double angle) {
  const double scale = 1099511627776.0;  // 2^40
  return {std::llround(std::cos(angle) * scale), std::llround(std::sin(angle) * scale)};
}

bool ray_ok(const std::vector<Vec2>& p, const std::vector<int>& layer, int at, int p_index, const Vec2& d) {
  if (d.x == 0 && d.y == 0) return false;
  const int m = static_cast<int>(layer.size());
  if (m >= 3) {
    const Vec2 u = sub(p[layer[(at + m - 1) % m]], p[p_index]);
    const Vec2 v = sub(p[layer[(at + 1) % m]], p[p_index]);
    if (det(v, d) >= 0 && det(d, u) >= 0) return false;
  }
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (static_cast<int>(q) == p_index) continue;
    const Vec2 w = sub(p[q], p[p_index]);
    if (det(d, w) == 0 && dot(d, w) > 0) return false;
  }
  return true;
}

}  // namespace

RayAssignment assign_rays(std::span<const Point> points, const OnionDecomposition& decomp) {
  const auto p = to_lattice(points);
  RayAssignment rays;
  rays.has_ray.assign(points.size(), false);
  rays.direction.assign(points.size(), {});
  for (int L = 1; L < decomp.layer_count(); ++L) {
    const auto& layer = decomp.layers[L];
    const int m = static_cast<int>(layer.size());
    for (int at = 0; at < m; ++at) {
      const int i = layer[at];
      double base = 0, width = 0.5;
      if (m >= 3) {
        const Vec2 u = sub(p[layer[(at + m - 1) % m]], p[i]);
        const Vec2 v = sub(p[layer[(at + 1) % m]], p[i]);
        const double nu = std::hypot(static_cast<double>(u.x), static_cast<double>(u.y));
        const double nv = std::hypot(static_cast<double>(v.x), static_cast<double>(v.y));
        const double ex = -(u.x / nu + v.x / nv), ey = -(u.y / nu + v.y / nv);
        base = std::atan2(ey, ex);
        const double interior = std::acos(std::clamp((u.x * v.x + u.y * v.y) / (nu * nv), -1.0, 1.0));
        width = (kPi - interior) / 2;
      } else if (m == 2) {
        const Vec2 v = sub(p[layer[1 - at]], p[i]);
        base = std::atan2(static_cast<double>(v.y), static_cast<double>(v.x)) + kPi / 2;
      }
      bool found = false;
      for (int j = 0; j < 4096 && !found; ++j) {
        const int step = (j + 1) / 2 * (j % 2 ? 1 : -1);
        const Vec2 d = direction_at(base + step * width / 4096);
        if (ray_ok(p, layer, at, i, d)) {
          rays.direction[i] = d;
          rays.has_ray[i] = true;
          found = true;
        }
      }
      if (!found) throw DegenerateInputError("no valid ray direction");
    }
  }
  return rays;
}

bool ray_is_valid(std::span<const Point> points, const OnionDecomposition& decomp,
                  const RayAssignment& rays, int p) {
  const int L = decomp.layer_of[p];
  if (L == 1) return !rays.has_ray[p];
  if (!rays.has_ray[p]) return false;
  const auto& layer = decomp.layers[L - 1];
  const int at = static_cast<int>(std::find(layer.begin(), layer.end(), p) - layer.begin());
  return ray_ok(to_lattice(points), layer, at, p, rays.direction[p]);
}

TriangularPath triangular_path(const TriangulationMesh& mesh, const OnionDecomposition& decomp,
                               int p, const RayAssignment& rays) {
  if (decomp.layer_of[p] == 1) throw std::invalid_argument("triangular paths start below layer 1");
  const auto pts = to_lattice(mesh.points);
  TriangularPath path;
  int a = p;
  while (decomp.layer_of[a] > 1) {
    path.anchors.push_back(a);
    const Vec2 d = rays.direction[a];
    bool found = false;
    for (const auto& t : mesh.triangles) {
      const auto it = std::find(t.begin(), t.end(), a);
      if (it == t.end()) continue;
      std::array<int, 3> r = t;
      std::rotate(r.begin(), r.begin() + (it - t.begin()), r.end());
      const __int128 s1 = det(sub(pts[r[1]], pts[a]), d), s2 = det(d, sub(pts[r[2]], pts[a]));
      if (s1 == 0 || s2 == 0) {
        if ((s1 == 0 && dot(sub(pts[r[1]], pts[a]), d) > 0) || (s2 == 0 && dot(sub(pts[r[2]], pts[a]), d) > 0))
          throw DegenerateInputError("ray runs along a mesh edge");
        continue;
      }
      if (s1 > 0 && s2 > 0) {
        path.triangles.push_back(r);
        a = decomp.labels[r[1]] < decomp.labels[r[2]] ? r[1] : r[2];
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("mesh does not cover the ray at an anchor");
  }
  path.anchors.push_back(a);
  return path;
}

namespace {

void check_noncrossing(const std::vector<Vec2>& p, std::span<const Edge> edges, bool adjacent_ok) {
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      const bool touch = a == c || a == d || b == c || b == d;
      if (touch && !adjacent_ok) throw std::invalid_argument("edges share a vertex");
      if (properly_cross(p[a], p[b], p[c], p[d])) throw std::invalid_argument("edges cross");
    }
}

std::map<Edge, int> edge_bits(const TriangulationMesh& mesh, const std::set<Edge>& on) {
  std::map<Edge, int> bits;
  for (const auto& e : mesh.edges) bits[e] = on.count(e) ? 1 : 0;
  return bits;
}

std::set<Edge> marked(const TriangulationMesh& mesh, const std::map<Edge, int>& bits) {
  std::set<Edge> on;
  if (bits.size() != mesh.edges.size()) throw std::invalid_argument("annotation does not cover the mesh");
  for (const auto& e : mesh.edges) {
    auto it = bits.find(e);
    if (it == bits.end() || (it->second != 0 && it->second != 1)) throw std::invalid_argument("bad edge bit");
    if (it->second) on.insert(e);
  }
  return on;
}

}  // namespace

std::pair<TriangulationMesh, MatchingAnnotation> annotate_matching(std::span<const Point> points,
                                                                   std::span<const Edge> matching) {
  const int n = static_cast<int>(points.size());
  std::set<Edge> on;
  for (auto [a, b] : matching) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("matching edge out of range");
    on.insert(make_edge(a, b));
  }
  const std::vector<Edge> edges(on.begin(), on.end());
  check_noncrossing(to_lattice(points), edges, false);
  ConstraintSet s{edges};
  auto mesh = build_cdt(points, s);
  MatchingAnnotation ann;
  ann.mate.assign(n, -1);
  for (auto [a, b] : edges) {
    ann.mate[a] = b;
    ann.mate[b] = a;
  }
  ann.bit = edge_bits(mesh, on);
  return {std::move(mesh), std::move(ann)};
}

std::pair<TriangulationMesh, CycleAnnotation> annotate_cycle(std::span<const Point> points,
                                                             std::span<const int> order) {
  const int n = static_cast<int>(points.size());
  if (n < 3 || static_cast<int>(order.size()) != n) throw std::invalid_argument("cycle must visit every point");
  std::vector<int> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]++) throw std::invalid_argument("cycle order is not a permutation");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(make_edge(order[i], order[(i + 1) % n]));
  check_noncrossing(to_lattice(points), edges, true);
  ConstraintSet s{edges};
  auto mesh = build_cdt(points, s);
  CycleAnnotation ann;
  ann.pos.assign(n, 0);
  ann.prev.assign(n, 0);
  ann.next.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    ann.pos[order[i]] = i + 1;
    ann.next[order[i]] = order[(i + 1) % n];
    ann.prev[order[i]] = order[(i + n - 1) % n];
  }
  ann.bit = edge_bits(mesh, std::set<Edge>(edges.begin(), edges.end()));
  return {std::move(mesh), std::move(ann)};
}

bool is_legal_annotated_cdt(const TriangulationMesh& mesh, const MatchingAnnotation& annotation) {
  try {
    const int n = static_cast<int>(mesh.points.size());
    if (static_cast<int>(annotation.mate.size()) != n) return false;
    const auto on = marked(mesh, annotation.bit);
    std::vector<int> mate(n, -1);
    for (auto [a, b] : on) {
      if (mate[a] >= 0 || mate[b] >= 0) return false;
      mate[a] = b;
      mate[b] = a;
    }
    if (mate != annotation.mate) return false;
    return build_cdt(mesh.points, ConstraintSet{{on.begin(), on.end()}}) == mesh;
  } catch (const std::exception&) {
    return false;
  }
}

bool is_legal_annotated_cdt(const TriangulationMesh& mesh, const CycleAnnotation& annotation) {
  try {
    const int n = static_cast<int>(mesh.points.size());
    if (n < 3 || static_cast<int>(annotation.pos.size()) != n || static_cast<int>(annotation.prev.size()) != n ||
        static_cast<int>(annotation.next.size()) != n)
      return false;
    const auto on = marked(mesh, annotation.bit);
    if (static_cast<int>(on.size()) != n) return false;
    std::vector<int> at(n + 1, -1);
    for (int v = 0; v < n; ++v) {
      const int k = annotation.pos[v];
      if (k < 1 || k > n || at[k] >= 0) return false;
      at[k] = v;
    }
    for (int v = 0; v < n; ++v) {
      const int k = annotation.pos[v];
      const int nx = at[k == n ? 1 : k + 1], pv = at[k == 1 ? n : k - 1];
      if (annotation.next[v] != nx || annotation.prev[v] != pv) return false;
      if (!on.count(make_edge(v, nx))) return false;
    }
    return build_cdt(mesh.points, ConstraintSet{{on.begin(), on.end()}}) == mesh;
  } catch (const std::exception&) {
    return false;
  }
}

namespace {

enum class Flavor { kMatching, kCycle };

// A region of the recursion: a simple CCW polygon of labels starting at its
// smallest label, plus what is already decided on its boundary.
struct Lobe {
  std::vector<int> ring;
  std::vector<int> edge;  // per ring edge: -1 undecided (hull), 0 settled, w > 0 bit 0 with outer apex w
  std::vector<int> role;  // per vertex: -1 fresh; matching 0/1 (must match inside); cycle bit 1 in, bit 2 out
  std::vector<int> pos;   // cycles: position mod n where role > 0
};

constexpr int kIn = 1;
constexpr int kOut = 2;

struct SepEdge {
  int a = 0, b = 0;        // direction inside the first triangle holding it
  int apex[2] = {0, 0};    // third vertex left of a->b, then right of a->b
  int tris = 0;
  int parent = -1;         // ring edge of the enclosing lobe, if any
  bool flippable = false;  // both triangles in the separator and the quad flips
};

struct SubShape {
  std::vector<int> ring;
  std::vector<int> source;  // per ring edge: parent ring edge index, or -(separator edge + 1)
};

struct Separator {
  std::vector<std::array<int, 3>> tris;
  std::vector<int> verts;
  std::vector<SepEdge> edges;
  std::vector<SubShape> lobes;
  std::vector<std::vector<int>> touching;  // per entry of verts: sub-lobes having it on their ring
};

struct Shape {
  std::vector<int> interior;
  bool expanded = false;
  std::vector<Separator> separators;
};

void put16(std::string& key, int v) {
  key.push_back(static_cast<char>(v & 0xff));
  key.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::vector<int> rotate_to_min(std::vector<int> ring) {
  std::rotate(ring.begin(), std::min_element(ring.begin(), ring.end()), ring.end());
  return ring;
}

// Cycle lobes: the paths inside must pair every out-stub with an in-stub by
// non-crossing chords whose lengths add up to exactly `inner + pairs`.
bool stubs_feasible(const std::vector<int>& role, const std::vector<int>& pos, int inner, int n) {
  std::vector<int> outs, ins;
  for (int t = 0; t < static_cast<int>(role.size()); ++t) {
    if (role[t] <= 0) continue;
    if (role[t] & 2) outs.push_back(t);
    if (role[t] & 1) ins.push_back(t);
  }
  const int a = static_cast<int>(outs.size()), target = inner + a;
  std::vector<char> used(ins.size(), 0);
  std::vector<std::pair<int, int>> chords;
  auto between = [](int x, int lo, int hi) { return lo < hi ? lo < x && x < hi : x > lo || x < hi; };
  auto cross = [&](int x1, int y1, int x2, int y2) {
    if (x1 == y1 || x2 == y2 || x1 == x2 || x1 == y2 || y1 == x2 || y1 == y2) return false;
    return between(x2, x1, y1) != between(y2, x1, y1);
  };
  auto dfs = [&](auto&& self, int i, int sum) -> bool {
    if (i == a) return sum == target;
    if (sum + (a - i) > target) return false;
    for (std::size_t j = 0; j < ins.size(); ++j) {
      if (used[j]) continue;
      int d = ((pos[ins[j]] - pos[outs[i]]) % n + n) % n;
      if (d == 0) d = n;
      bool ok = true;
      for (auto [x, y] : chords) ok = ok && !cross(outs[i], ins[j], x, y);
      if (!ok) continue;
      used[j] = 1;
      chords.emplace_back(outs[i], ins[j]);
      const bool found = self(self, i + 1, sum + d);
      chords.pop_back();
      used[j] = 0;
      if (found) return true;
    }
    return false;
  };
  return dfs(dfs, 0, 0);
}

class AnnotatedEngine {
 public:
  AnnotatedEngine(std::span<const Point> points, Flavor flavor, CountOptions options);
  CountResult run();

 private:
  const Vec2& at(int label) const { return in_->pos(label); }
  bool inside(const std::vector<int>& ring, int p) const;
  bool flippable(int a, int b, int c, int d) const;
  Shape& shape(const std::vector<int>& ring);
  void expand(Shape& sh, const std::vector<int>& ring);
  void finalize(Shape& sh, const std::vector<int>& ring, const std::vector<std::array<int, 3>>& tris);
  std::string key(const Lobe& lobe) const;
  BigCount count(const Lobe& lobe);
  BigCount count_separator(const Lobe& lobe, const Shape& sh, const Separator& sep);

  std::vector<Point> points_;
  Flavor flavor_;
  CountOptions options_;
  OnionDecomposition decomp_;
  std::unique_ptr<CountingInstance> in_;
  int n_ = 0;
  std::vector<Vec2> ray_;  // by label
  std::unordered_map<std::string, Shape> shapes_;
  std::unordered_map<std::string, BigCount> memo_;
  CountStats stats_;
};

AnnotatedEngine::AnnotatedEngine(std::span<const Point> points, Flavor flavor, CountOptions options)
    : points_(points.begin(), points.end()), flavor_(flavor), options_(options) {
  n_ = static_cast<int>(points_.size());
  decomp_ = relabel_within_layers(compute_onion(points_), options_.labeling_seed);
  in_ = std::make_unique<CountingInstance>(points_, decomp_);
  const RayAssignment rays = assign_rays(points_, decomp_);
  ray_.assign(n_ + 1, {});
  for (int i = 0; i < n_; ++i) ray_[decomp_.labels[i]] = rays.direction[i];
}

bool AnnotatedEngine::inside(const std::vector<int>& ring, int p) const {
  int winding = 0;
  const Vec2& q = at(p);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& a = at(ring[i]);
    const Vec2& b = at(ring[(i + 1) % ring.size()]);
    if (a.y <= q.y && q.y < b.y && orient_sign(a, b, q) > 0) ++winding;
    if (b.y <= q.y && q.y < a.y && orient_sign(a, b, q) < 0) --winding;
  }
  return winding != 0;
}

// c lies left of a->b and d right of it.
bool AnnotatedEngine::flippable(int a, int b, int c, int d) const {
  return properly_cross(at(a), at(b), at(c), at(d)) && in_circle_sign(at(a), at(b), at(c), at(d)) > 0;
}

Shape& AnnotatedEngine::shape(const std::vector<int>& ring) {
  std::string k;
  for (int v : ring) put16(k, v);
  auto [it, fresh] = shapes_.try_emplace(std::move(k));
  if (fresh) {
    std::vector<char> on(n_ + 1, 0);
    for (int v : ring) on[v] = 1;
    for (int p = 1; p <= n_; ++p)
      if (!on[p] && inside(ring, p)) it->second.interior.push_back(p);
  }
  return it->second;
}

void AnnotatedEngine::expand(Shape& sh, const std::vector<int>& ring) {
  sh.expanded = true;
  const CountingInstance& in = *in_;
  std::vector<char> on_ring(n_ + 1, 0), usable(n_ + 1, 0);
  for (int v : ring) on_ring[v] = usable[v] = 1;
  for (int v : sh.interior) usable[v] = 1;
  std::vector<int> cand;
  for (int v = 1; v <= n_; ++v)
    if (usable[v]) cand.push_back(v);

  using Bits = std::vector<std::uint64_t>;
  auto mark = [&](Bits& b, int u, int v) {
    const int sid = in.segment_id(u, v);
    b[sid / 64] |= std::uint64_t{1} << (sid % 64);
  };
  Bits ring_bits(in.words(), 0);
  for (std::size_t i = 0; i < ring.size(); ++i) mark(ring_bits, ring[i], ring[(i + 1) % ring.size()]);
  auto blocked = [&](int u, int v, const Bits& sb) {
    const int sid = in.segment_id(u, v);
    return in.crosses_any(sid, ring_bits) || in.crosses_any(sid, sb);
  };

  std::vector<std::array<int, 3>> tris;
  auto walk = [&](auto&& self, int p, const Bits& sb) -> void {
    if (on_ring[p]) {
      finalize(sh, ring, tris);
      return;
    }
    const Vec2 d = ray_[p];
    for (int u : cand) {
      if (u == p || det(sub(at(u), at(p)), d) <= 0) continue;
      for (int v : cand) {
        if (v == p || v == u || det(d, sub(at(v), at(p))) <= 0) continue;
        if (in.orient(p, u, v) <= 0 || !in.empty_triangle(p, u, v)) continue;
        const int q = std::min(u, v);
        bool known = false;
        for (const auto& t : tris)
          if (std::is_permutation(t.begin(), t.end(), std::array<int, 3>{p, u, v}.begin())) known = true;
        if (known) {
          self(self, q, sb);
          continue;
        }
        if (blocked(p, u, sb) || blocked(p, v, sb) || blocked(u, v, sb)) continue;
        Bits nb = sb;
        mark(nb, p, u);
        mark(nb, p, v);
        mark(nb, u, v);
        tris.push_back({p, u, v});
        self(self, q, nb);
        tris.pop_back();
      }
    }
  };

  const int x = ring[0], y = ring[1];
  for (int z : cand) {
    if (z == x || z == y || in.orient(x, y, z) <= 0 || !in.empty_triangle(x, y, z)) continue;
    const Bits none(in.words(), 0);
    if (blocked(x, z, none) || blocked(z, y, none)) continue;
    Bits sb = none;
    mark(sb, x, z);
    mark(sb, z, y);
    tris.assign(1, {x, y, z});
    walk(walk, z, sb);
  }
}

void AnnotatedEngine::finalize(Shape& sh, const std::vector<int>& ring,
                               const std::vector<std::array<int, 3>>& tris) {
  Separator sep;
  sep.tris = tris;
  std::map<Edge, int> index;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3], c = t[(k + 2) % 3];
      auto [it, fresh] = index.try_emplace(make_edge(a, b), static_cast<int>(sep.edges.size()));
      if (fresh) {
        SepEdge e;
        e.a = a;
        e.b = b;
        e.apex[0] = c;
        e.tris = 1;
        sep.edges.push_back(e);
      } else {
        sep.edges[it->second].apex[1] = c;
        sep.edges[it->second].tris = 2;
      }
    }
  const int m = static_cast<int>(ring.size());
  for (int i = 0; i < m; ++i)
    if (auto it = index.find(make_edge(ring[i], ring[(i + 1) % m])); it != index.end())
      sep.edges[it->second].parent = i;
  for (auto& e : sep.edges)
    if (e.tris == 2) e.flippable = flippable(e.a, e.b, e.apex[0], e.apex[1]);
  for (const auto& t : tris)
    for (int v : t)
      if (std::find(sep.verts.begin(), sep.verts.end(), v) == sep.verts.end()) sep.verts.push_back(v);
  std::sort(sep.verts.begin(), sep.verts.end());

  // Faces left over: ring edges plus reversed separator edges, opposite pairs cancelled.
  struct Dir {
    int from, to, source;
  };
  std::vector<Dir> dirs;
  for (int i = 0; i < m; ++i) dirs.push_back({ring[i], ring[(i + 1) % m], i});
  for (std::size_t k = 0; k < sep.edges.size(); ++k) {
    const auto& e = sep.edges[k];
    const int src = -static_cast<int>(k) - 1;
    if (e.tris == 1) dirs.push_back({e.b, e.a, src});
    else {
      dirs.push_back({e.b, e.a, src});
      dirs.push_back({e.a, e.b, src});
    }
  }
  std::vector<char> alive(dirs.size(), 1);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size() && alive[i]; ++j)
      if (alive[j] && dirs[i].from == dirs[j].to && dirs[i].to == dirs[j].from) alive[i] = alive[j] = 0;

  std::vector<char> used(dirs.size(), 0);
  for (std::size_t s = 0; s < dirs.size(); ++s) {
    if (!alive[s] || used[s]) continue;
    SubShape face;
    std::size_t cur = s;
    while (!used[cur]) {
      used[cur] = 1;
      face.ring.push_back(dirs[cur].from);
      face.source.push_back(dirs[cur].source);
      const int b = dirs[cur].to;
      const Vec2 ref = sub(at(dirs[cur].from), at(b));
      std::size_t best = dirs.size();
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        if (!alive[j] || dirs[j].from != b) continue;
        if (best == dirs.size()) {
          best = j;
          continue;
        }
        // Keep the candidate with the largest CCW angle from ref.
        const Vec2 vj = sub(at(dirs[j].to), at(b)), vb = sub(at(dirs[best].to), at(b));
        auto half = [&](const Vec2& v) { return det(ref, v) > 0 || (det(ref, v) == 0 && dot(ref, v) > 0) ? 0 : 1; };
        const int hj = half(vj), hb = half(vb);
        if (hj > hb || (hj == hb && det(vb, vj) > 0)) best = j;
      }
      if (best == dirs.size()) throw std::logic_error("open face while tracing sub-regions");
      cur = best;
    }
    if (cur != s) throw std::logic_error("face tracing did not close");
    const auto shift = std::min_element(face.ring.begin(), face.ring.end()) - face.ring.begin();
    std::rotate(face.ring.begin(), face.ring.begin() + shift, face.ring.end());
    std::rotate(face.source.begin(), face.source.begin() + shift, face.source.end());
    std::vector<int> sorted = face.ring;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::logic_error("sub-region boundary is not simple");
    sep.lobes.push_back(std::move(face));
  }

  sep.touching.resize(sep.verts.size());
  for (std::size_t i = 0; i < sep.verts.size(); ++i)
    for (std::size_t j = 0; j < sep.lobes.size(); ++j) {
      const auto& r = sep.lobes[j].ring;
      if (std::find(r.begin(), r.end(), sep.verts[i]) != r.end()) sep.touching[i].push_back(static_cast<int>(j));
    }
  sh.separators.push_back(std::move(sep));
}

std::string AnnotatedEngine::key(const Lobe& lobe) const {
  std::string k;
  for (int v : lobe.ring) put16(k, v);
  put16(k, 0xffff);
  for (int e : lobe.edge) put16(k, e + 1);
  for (int r : lobe.role) k.push_back(static_cast<char>(r + 1));
  if (flavor_ == Flavor::kCycle) {
    int ref = -1;
    for (std::size_t i = 0; i < lobe.ring.size(); ++i) {
      if (lobe.role[i] <= 0) continue;
      if (ref < 0) ref = lobe.pos[i];
      put16(k, (lobe.pos[i] - ref + n_) % n_);
    }
  }
  return k;
}

BigCount AnnotatedEngine::count(const Lobe& lobe) {
  ++stats_.calls;
  std::string k;
  if (options_.memoize) {
    k = key(lobe);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  }
  Shape& sh = shape(lobe.ring);
  if (!sh.expanded) expand(sh, lobe.ring);
  BigCount total = 0;
  for (const auto& sep : sh.separators) total += count_separator(lobe, sh, sep);
  if (options_.memoize) {
    memo_.emplace(std::move(k), total);
    stats_.subproblems = static_cast<std::int64_t>(memo_.size());
    if (stats_.subproblems > options_.memo_cap)
      throw ResourceLimitError("memo table exceeded " + std::to_string(options_.memo_cap) + " entries", stats_);
  }
  return total;
}

BigCount AnnotatedEngine::count_separator(const Lobe& lobe, const Shape&, const Separator& sep) {
  const bool cyc = flavor_ == Flavor::kCycle;
  const int m = static_cast<int>(lobe.ring.size());
  std::vector<int> ring_at(n_ + 1, -1);
  for (int i = 0; i < m; ++i) ring_at[lobe.ring[i]] = i;
  for (const auto& e : sep.edges)
    if (e.parent >= 0 && lobe.edge[e.parent] > 0 && flippable(e.a, e.b, e.apex[0], lobe.edge[e.parent])) return 0;

  const int nv = static_cast<int>(sep.verts.size());
  std::vector<int> sidx(n_ + 1, -1);
  for (int i = 0; i < nv; ++i) sidx[sep.verts[i]] = i;
  std::vector<int> role(nv, -1), known(nv, -1), need_in(nv, 0), need_out(nv, 0);
  bool frame_free = true;
  for (int i = 0; i < m; ++i)
    if (cyc && lobe.role[i] > 0) frame_free = false;
  for (int i = 0; i < nv; ++i) {
    const int r = ring_at[sep.verts[i]];
    if (r >= 0) role[i] = lobe.role[r];
    if (cyc) {
      if (role[i] > 0) known[i] = lobe.pos[r];
      need_in[i] = role[i] < 0 || (role[i] & kIn) ? 1 : 0;
      need_out[i] = role[i] < 0 || (role[i] & kOut) ? 1 : 0;
    } else {
      need_out[i] = role[i] < 0 ? 1 : role[i];
    }
  }

  std::vector<int> open;
  for (int k = 0; k < static_cast<int>(sep.edges.size()); ++k) {
    const auto& e = sep.edges[k];
    if (e.parent < 0 || lobe.edge[e.parent] == -1) open.push_back(k);
  }
  std::vector<int> state(sep.edges.size(), 0), deg_in(nv, 0), deg_out(nv, 0);
  std::vector<int> give_in(nv, -1), give_out(nv, -1), posv(nv, 0);

  // Sub-lobes for the current choices; false when a cheap necessary condition fails.
  std::vector<int> face_inner(sep.lobes.size(), 0);
  if (cyc)
    for (std::size_t j = 0; j < sep.lobes.size(); ++j)
      face_inner[j] = static_cast<int>(shape(sep.lobes[j].ring).interior.size());
  auto fill = [&](std::size_t j, Lobe& s, bool positions) -> bool {
    const auto& face = sep.lobes[j];
    const int len = static_cast<int>(face.ring.size());
    if (s.ring.empty()) s.ring = face.ring;
    s.edge.resize(len);
    s.role.resize(len);
    s.pos.assign(len, 0);
    for (int t = 0; t < len; ++t) {
      const int src = face.source[t];
      if (src >= 0) {
        s.edge[t] = lobe.edge[src];
      } else {
        const auto& e = sep.edges[-src - 1];
        s.edge[t] = state[-src - 1] ? 0 : e.apex[0];
      }
      const int v = face.ring[t];
      if (const int i = sidx[v]; i >= 0) {
        if (cyc) {
          s.role[t] = (give_in[i] == static_cast<int>(j) ? kIn : 0) | (give_out[i] == static_cast<int>(j) ? kOut : 0);
          if (s.role[t]) s.pos[t] = posv[i];
        } else {
          s.role[t] = give_out[i] == static_cast<int>(j) ? 1 : 0;
        }
      } else {
        const int r = ring_at[v];
        s.role[t] = lobe.role[r];
        s.pos[t] = lobe.pos.empty() ? 0 : lobe.pos[r];
      }
    }
    if (cyc) {
      int a = 0, b = 0, fresh = 0;
      long long balance = 0;
      for (int t = 0; t < len; ++t) {
        if (s.role[t] < 0) ++fresh;
        if (s.role[t] > 0 && (s.role[t] & kOut)) ++a, balance -= s.pos[t];
        if (s.role[t] > 0 && (s.role[t] & kIn)) ++b, balance += s.pos[t];
      }
      const int inner = fresh + face_inner[j];
      if (a != b || (a == 0 && inner > 0)) return false;
      if (!positions) return true;
      if ((((balance - inner - a) % n_) + n_) % n_ != 0) return false;
      if (a > 0 && !stubs_feasible(s.role, s.pos, inner, n_)) return false;
    }
    return true;
  };
  auto build = [&](std::vector<Lobe>& subs) {
    subs.resize(sep.lobes.size());
    for (std::size_t j = 0; j < sep.lobes.size(); ++j)
      if (!fill(j, subs[j], true)) return false;
    return true;
  };

  BigCount total = 0;
  std::vector<Lobe> subs;
  // Adds the product of the sub-lobe counts to `acc`.
  auto product = [&](BigCount& acc) {
    if (!build(subs)) return;
    if (subs.empty()) {
      acc += 1;
      return;
    }
    BigCount prod = count(subs[0]);
    for (std::size_t j = 1; j < subs.size() && !prod.is_zero(); ++j) prod *= count(subs[j]);
    if (!prod.is_zero()) acc += prod;
  };

  // Faces are checked as soon as their last separator vertex is assigned.
  std::vector<std::vector<int>> closes(nv);
  if (cyc) {
    std::vector<int> last(sep.lobes.size(), -1);
    for (int i = 0; i < nv; ++i)
      for (int j : sep.touching[i]) last[j] = i;
    for (std::size_t j = 0; j < last.size(); ++j)
      if (last[j] >= 0) closes[last[j]].push_back(static_cast<int>(j));
  }
  Lobe probe;
  auto ready = [&](int i) {
    for (int j : closes[i]) {
      probe.ring.clear();
      if (!fill(j, probe, false)) return false;
    }
    return true;
  };

  // Runs once every requirement is assigned; cycles first place loose path pieces.
  std::function<void(BigCount&)> finish = product;

  // Hand each leftover requirement to one touching sub-lobe.
  auto assign = [&](auto&& self, int i, bool in_side, BigCount& acc) -> void {
    if (i == nv) return finish(acc);
    const int next_i = cyc && !in_side ? i : i + 1;
    const bool next_side = cyc && !in_side;
    const auto& touch = sep.touching[i];
    int& slot = in_side ? give_in[i] : give_out[i];
    const int left = in_side ? need_in[i] - deg_in[i] : need_out[i] - deg_out[i];
    const bool optional = !cyc && role[i] < 0;
    auto step = [&]() {
      if (next_i != i && !ready(i)) return;
      self(self, next_i, next_side, acc);
    };
    if (left == 0 || optional) {
      slot = -1;
      step();
    }
    if (left > 0)
      for (int j : touch) {
        slot = j;
        step();
      }
    slot = -1;
  };
  // For cycles each vertex is visited twice: out side first, then in side.
  auto assign_all = [&](BigCount& acc) {
    if (nv == 0) return product(acc);
    assign(assign, 0, false, acc);
  };

  auto leaf = [&]() {
    if (!cyc) {
      assign_all(total);
      return;
    }
    std::vector<int> up(nv), off(nv, 0);
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](auto&& self, int v) -> int {
      if (up[v] == v) return v;
      const int r = self(self, up[v]);
      off[v] = (off[v] + off[up[v]]) % n_;
      up[v] = r;
      return r;
    };
    for (int k : open) {
      if (!state[k]) continue;
      const auto& e = sep.edges[k];
      const int tail = sidx[state[k] == 1 ? e.a : e.b], head = sidx[state[k] == 1 ? e.b : e.a];
      const int rt = find(find, tail), rh = find(find, head);
      if (rt == rh) {
        if (((off[head] - off[tail] - 1) % n_ + n_) % n_ != 0) return;
      } else {
        up[rh] = rt;
        off[rh] = ((off[tail] + 1 - off[head]) % n_ + n_) % n_;
      }
    }
    std::vector<int> base(nv, -1);
    for (int i = 0; i < nv; ++i) {
      const int r = find(find, i);
      if (known[i] < 0) continue;
      const int want = ((known[i] - off[i]) % n_ + n_) % n_;
      if (base[r] >= 0 && base[r] != want) return;
      base[r] = want;
    }
    std::vector<char> exports(nv, 0), linked(nv, 0);
    for (int i = 0; i < nv; ++i) {
      if (need_in[i] > deg_in[i] || need_out[i] > deg_out[i]) exports[find(find, i)] = 1;
      if (deg_in[i] || deg_out[i]) linked[find(find, i)] = 1;
    }
    BigCount factor = 1;
    std::vector<int> loose;
    bool pinned = !frame_free;
    for (int r = 0; r < nv; ++r) {
      if (find(find, r) != r || base[r] >= 0) continue;
      if (!exports[r]) {
        if (linked[r]) factor *= n_;
      } else if (!pinned) {
        base[r] = 0;
        factor *= n_;
        pinned = true;
      } else {
        loose.push_back(r);
      }
    }
    std::vector<int> rank(nv, -1);
    for (std::size_t t = 0; t < loose.size(); ++t) rank[loose[t]] = static_cast<int>(t);
    finish = [&](BigCount& acc) {
      // due[t]: faces whose positions are fixed once the first t loose pieces are placed
      std::vector<std::vector<int>> due(loose.size() + 1);
      for (std::size_t j = 0; j < sep.lobes.size(); ++j) {
        int d = -1;
        for (int i = 0; i < nv; ++i)
          if (give_in[i] == static_cast<int>(j) || give_out[i] == static_cast<int>(j)) d = std::max(d, rank[find(find, i)]);
        due[d + 1].push_back(static_cast<int>(j));
      }
      auto settled = [&](std::size_t level) {
        for (int i = 0; i < nv; ++i) posv[i] = (std::max(base[find(find, i)], 0) + off[i]) % n_;
        for (int j : due[level]) {
          probe.ring.clear();
          if (!fill(j, probe, true)) return false;
        }
        return true;
      };
      auto shifts = [&](auto&& self, std::size_t t) -> void {
        if (t == loose.size()) {
          product(acc);
          return;
        }
        for (int s = 0; s < n_; ++s) {
          base[loose[t]] = s;
          if (settled(t + 1)) self(self, t + 1);
        }
        base[loose[t]] = -1;
      };
      if (settled(0)) shifts(shifts, 0);
    };
    BigCount sum = 0;
    assign_all(sum);
    finish = product;
    if (!sum.is_zero()) total += factor * sum;
  };

  auto decide = [&](auto&& self, std::size_t t) -> void {
    if (t == open.size()) {
      leaf();
      return;
    }
    const int k = open[t];
    const auto& e = sep.edges[k];
    const int ia = sidx[e.a], ib = sidx[e.b];
    if (!e.flippable) {
      state[k] = 0;
      self(self, t + 1);
    }
    if (!cyc) {
      if (deg_out[ia] < need_out[ia] && deg_out[ib] < need_out[ib]) {
        state[k] = 1;
        ++deg_out[ia], ++deg_out[ib];
        self(self, t + 1);
        --deg_out[ia], --deg_out[ib];
      }
    } else {
      for (int dir = 1; dir <= 2; ++dir) {
        const int tail = dir == 1 ? ia : ib, head = dir == 1 ? ib : ia;
        if (deg_out[tail] >= need_out[tail] || deg_in[head] >= need_in[head]) continue;
        state[k] = dir;
        ++deg_out[tail], ++deg_in[head];
        self(self, t + 1);
        --deg_out[tail], --deg_in[head];
      }
    }
    state[k] = 0;
  };
  decide(decide, 0);
  return total;
}

CountResult AnnotatedEngine::run() {
  const auto start = std::chrono::steady_clock::now();
  memo_.clear();
  stats_ = {};
  Lobe root;
  root.ring = rotate_to_min(in_->hull());
  root.edge.assign(root.ring.size(), -1);
  root.role.assign(root.ring.size(), -1);
  if (flavor_ == Flavor::kCycle) root.pos.assign(root.ring.size(), 0);
  CountResult r;
  try {
    r.count = count(root);
  } catch (ResourceLimitError& e) {
    e.stats.elapsed = std::chrono::steady_clock::now() - start;
    e.stats.peak_memo_bytes = e.stats.subproblems * 128;
    throw;
  }
  stats_.subproblems = static_cast<std::int64_t>(memo_.size());
  stats_.elapsed = std::chrono::steady_clock::now() - start;
  std::int64_t bytes = 0;
  for (const auto& [k, v] : memo_) bytes += static_cast<std::int64_t>(k.capacity() + 64);
  stats_.peak_memo_bytes = bytes;
  r.stats = stats_;
  return r;
}

void require_cdt_position(std::span<const Point> points) {
  std::set<std::pair<Rational, Rational>> seen;
  for (const auto& p : points)
    if (!seen.emplace(p.x, p.y).second) throw DegenerateInputError("coinciding points");
  if (!validate_general_position(points).ok_for_cdt)
    throw DegenerateInputError("collinear triples or cocircular quadruples present");
}

}  // namespace

CountResult count_matchings(std::span<const Point> points, CountOptions options) {
  if (points.size() <= 2) {
    if (points.size() == 2 && points[0].x == points[1].x && points[0].y == points[1].y)
      throw DegenerateInputError("coinciding points");
    CountResult r;
    r.count = points.size() == 2 ? 2 : 1;
    return r;
  }
  require_cdt_position(points);
  return AnnotatedEngine(points, Flavor::kMatching, options).run();
}

CountResult count_rooted_cycles(std::span<const Point> points, CountOptions options) {
  if (points.size() < 3) throw DegenerateInputError("spanning cycles need at least 3 points");
  require_cdt_position(points);
  return AnnotatedEngine(points, Flavor::kCycle, options).run();
}

CountResult count_spanning_cycles(std::span<const Point> points, CountOptions options) {
  CountResult r = count_rooted_cycles(points, options);
  const BigCount twice_n = 2 * static_cast<int>(points.size());
  if (r.count % twice_n != 0) throw std::logic_error("rooted cycle total is not divisible by 2n");
  r.count /= twice_n;
  return r;
}

}  // namespace cfs
