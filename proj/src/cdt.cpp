#include "cfs/cdt.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace cfs {

bool ConstraintSet::contains(int a, int b) const {
  const Edge e = make_edge(a, b);
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

bool TriangulationMesh::is_hull_edge(int a, int b) const {
  auto it = adjacency.find(make_edge(a, b));
  return it != adjacency.end() && (it->second[0] < 0 || it->second[1] < 0);
}

namespace {

class Builder {
 public:
  explicit Builder(std::vector<Vec2> pts) : p_(std::move(pts)), n_(static_cast<int>(p_.size())) {
    adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
  }

  bool adjacent(int a, int b) const { return adj_[a * n_ + b] != 0; }
  void link(int a, int b, bool on) { adj_[a * n_ + b] = adj_[b * n_ + a] = on; }

  // Apex of the face on the given side (+1 left, -1 right) of a -> b.
  int apex(int a, int b, int side) const {
    for (int c = 0; c < n_; ++c) {
      if (c == a || c == b || !adjacent(a, c) || !adjacent(b, c)) continue;
      if (orient_sign(p_[a], p_[b], p_[c]) != side) continue;
      bool empty = true;
      for (int q = 0; q < n_ && empty; ++q)
        if (q != a && q != b && q != c && triangle_location(p_[a], p_[b], p_[c], p_[q]) >= 0) empty = false;
      if (empty) return c;
    }
    return -1;
  }

  bool flippable(int a, int b) const {
    const int c = apex(a, b, 1), d = apex(a, b, -1);
    if (c < 0 || d < 0) return false;
    return properly_cross(p_[a], p_[b], p_[c], p_[d]) && in_circle_sign(p_[a], p_[b], p_[c], p_[d]) > 0;
  }

  const std::vector<Vec2>& pts() const { return p_; }
  int size() const { return n_; }

 private:
  std::vector<Vec2> p_;
  int n_;
  std::vector<std::uint8_t> adj_;
};

}  // namespace

TriangulationMesh build_cdt(std::span<const Point> points, const ConstraintSet& constraints,
                            std::uint64_t insertion_seed) {
  const int n = static_cast<int>(points.size());
  if (n < 3 || !validate_general_position(points).ok_for_cdt)
    throw DegenerateInputError("point set is not in general position for a CDT");
  Builder b(to_lattice(points));
  const auto& p = b.pts();

  std::set<Edge> fixed;
  for (auto [u, v] : constraints.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw std::invalid_argument("constraint index out of range");
    fixed.insert(make_edge(u, v));
  }

  std::vector<Edge> order(fixed.begin(), fixed.end());
  std::vector<Edge> rest;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!fixed.count({u, v})) rest.emplace_back(u, v);
  if (insertion_seed == 0) {
    auto len = [&](const Edge& e) {
      const __int128 dx = p[e.first].x - p[e.second].x, dy = p[e.first].y - p[e.second].y;
      return dx * dx + dy * dy;
    };
    std::stable_sort(rest.begin(), rest.end(), [&](const Edge& l, const Edge& r) { return len(l) < len(r); });
  } else {
    std::mt19937_64 rng(insertion_seed);
    for (std::size_t k = rest.size(); k > 1; --k) std::swap(rest[k - 1], rest[rng() % k]);
  }
  order.insert(order.end(), rest.begin(), rest.end());

  std::vector<Edge> accepted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [u, v] = order[i];
    bool ok = true;
    for (const auto& [s, t] : accepted)
      if (properly_cross(p[u], p[v], p[s], p[t])) {
        ok = false;
        break;
      }
    if (!ok) {
      if (i < fixed.size()) throw std::invalid_argument("constraints cross");
      continue;
    }
    accepted.push_back(order[i]);
    b.link(u, v, true);
  }

  std::deque<Edge> queue(accepted.begin(), accepted.end());
  while (!queue.empty()) {
    const auto [u, v] = queue.front();
    queue.pop_front();
    if (fixed.count({u, v}) || !b.adjacent(u, v) || !b.flippable(u, v)) continue;
    const int c = b.apex(u, v, 1), d = b.apex(u, v, -1);
    b.link(u, v, false);
    b.link(c, d, true);
    for (const Edge& e : {make_edge(u, c), make_edge(c, v), make_edge(v, d), make_edge(d, u)}) queue.push_back(e);
  }

  TriangulationMesh mesh;
  mesh.points.assign(points.begin(), points.end());
  std::set<std::array<int, 3>> tris;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!b.adjacent(u, v)) continue;
      mesh.edges.emplace_back(u, v);
      const std::array<int, 2> side{b.apex(u, v, 1), b.apex(u, v, -1)};
      mesh.adjacency[{u, v}] = side;
      if (side[0] >= 0) {
        std::array<int, 3> t{u, v, side[0]};
        std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
        tris.insert(t);
      }
    }
  mesh.triangles.assign(tris.begin(), tris.end());
  return mesh;
}

bool is_flippable(const TriangulationMesh& mesh, Edge e, const ConstraintSet& constraints) {
  e = make_edge(e.first, e.second);
  auto it = mesh.adjacency.find(e);
  if (it == mesh.adjacency.end()) throw std::invalid_argument("edge is not in the mesh");
  if (it->second[0] < 0 || it->second[1] < 0) throw std::invalid_argument("hull edge has one triangle");
  if (constraints.contains(e.first, e.second)) throw std::invalid_argument("constraint edges are never flipped");
  const auto p = to_lattice(mesh.points);
  const Vec2 &a = p[e.first], &b = p[e.second], &c = p[it->second[0]], &d = p[it->second[1]];
  return properly_cross(a, b, c, d) && in_circle_sign(a, b, c, d) > 0;
}

}  // namespace cfs
