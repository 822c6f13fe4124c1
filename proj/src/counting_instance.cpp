#include "cfs/counting_instance.hpp"

#include <stdexcept>

namespace cfs {

CountingInstance::CountingInstance(std::span<const Point> points, const OnionDecomposition& decomp) {
  n_ = static_cast<int>(points.size());
  k_ = decomp.layer_count();
  if (decomp.size() != n_) throw std::invalid_argument("onion decomposition does not match point set");
  if (!is_layer_monotone(decomp)) throw std::invalid_argument("labeling is not layer-monotone");

  const auto lattice = to_lattice(points);
  const int m = n_ + 1;
  pos_.assign(m, {});
  layer_.assign(m, 0);
  index_of_.assign(m, -1);
  label_of_index_.assign(n_, 0);
  for (int i = 0; i < n_; ++i) {
    const int l = decomp.labels[i];
    pos_[l] = lattice[i];
    layer_[l] = decomp.layer_of[i];
    index_of_[l] = i;
    label_of_index_[i] = l;
  }

  hull_pos_.assign(m, -1);
  for (int i : decomp.layers.front()) {
    hull_pos_[decomp.labels[i]] = static_cast<int>(hull_.size());
    hull_.push_back(decomp.labels[i]);
  }
  first_label_.assign(k_ + 2, 1);
  for (int L = 1; L <= k_; ++L)
    first_label_[L + 1] = first_label_[L] + static_cast<int>(decomp.layers[L - 1].size());

  empty_seg_.assign(static_cast<std::size_t>(m) * m, 0);
  for (int a = 1; a <= n_; ++a)
    for (int b = a + 1; b <= n_; ++b) {
      bool empty = true;
      for (int p = 1; p <= n_ && empty; ++p)
        if (p != a && p != b && on_segment(pos_[a], pos_[b], pos_[p])) empty = false;
      empty_seg_[a * m + b] = empty_seg_[b * m + a] = empty;
    }

  empty_tri_.assign(static_cast<std::size_t>(m) * m * m, 0);
  for (int a = 1; a <= n_; ++a)
    for (int b = a + 1; b <= n_; ++b)
      for (int c = b + 1; c <= n_; ++c) {
        if (orient(a, b, c) == 0) continue;
        bool empty = true;
        for (int p = 1; p <= n_ && empty; ++p)
          if (p != a && p != b && p != c && triangle_location(pos_[a], pos_[b], pos_[c], pos_[p]) >= 0)
            empty = false;
        if (!empty) continue;
        const int t[3] = {a, b, c};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              if (i != j && j != k && i != k)
                empty_tri_[(static_cast<std::size_t>(t[i]) * m + t[j]) * m + t[k]] = 1;
      }

  seg_id_.assign(static_cast<std::size_t>(m) * m, -1);
  std::vector<std::pair<int, int>> ends;
  for (int a = 1; a <= n_; ++a)
    for (int b = a + 1; b <= n_; ++b) {
      seg_id_[a * m + b] = seg_id_[b * m + a] = static_cast<int>(ends.size());
      ends.emplace_back(a, b);
    }
  segments_ = static_cast<int>(ends.size());
  words_ = (segments_ + 63) / 64;
  cross_.assign(static_cast<std::size_t>(segments_) * words_, 0);
  for (int s = 0; s < segments_; ++s)
    for (int t = s + 1; t < segments_; ++t) {
      const auto [a, b] = ends[s];
      const auto [c, d] = ends[t];
      if (!properly_cross(pos_[a], pos_[b], pos_[c], pos_[d])) continue;
      cross_[static_cast<std::size_t>(s) * words_ + t / 64] |= std::uint64_t{1} << (t % 64);
      cross_[static_cast<std::size_t>(t) * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
    }
}

}  // namespace cfs
