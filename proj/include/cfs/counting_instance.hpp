#pragma once

// Label-indexed precomputation shared by the dynamic-programming counters.
//
// All arrays are indexed by label (1..n, slot 0 unused). Because labels are
// layer-monotone, "v is on a lower layer than u" implies v < u.

#include <cstdint>
#include <span>
#include <vector>

#include "cfs/geometry.hpp"
#include "cfs/onion.hpp"

namespace cfs {

class CountingInstance {
 public:
  CountingInstance(std::span<const Point> points, const OnionDecomposition& decomp);

  int size() const { return n_; }
  int layer_count() const { return k_; }

  const Vec2& pos(int label) const { return pos_[label]; }
  int layer(int label) const { return layer_[label]; }
  /// Index into the original point span.
  int index_of(int label) const { return index_of_[label]; }
  int label_of_index(int index) const { return label_of_index_[index]; }

  /// Layer-1 labels in CCW order.
  const std::vector<int>& hull() const { return hull_; }
  /// Position in hull() or -1.
  int hull_pos(int label) const { return hull_pos_[label]; }
  /// Labels on layer < L are exactly 1 .. first_label_of_layer(L) - 1.
  int first_label_of_layer(int layer) const { return first_label_[layer]; }

  int orient(int a, int b, int c) const { return orient_sign(pos_[a], pos_[b], pos_[c]); }

  /// Closed triangle abc is non-degenerate and contains no other point.
  bool empty_triangle(int a, int b, int c) const {
    return empty_tri_[(static_cast<std::size_t>(a) * (n_ + 1) + b) * (n_ + 1) + c] != 0;
  }
  /// No point lies in the relative interior of segment ab.
  bool empty_segment(int a, int b) const { return empty_seg_[a * (n_ + 1) + b] != 0; }

  int segment_count() const { return segments_; }
  int segment_id(int a, int b) const { return seg_id_[a * (n_ + 1) + b]; }
  int words() const { return words_; }

  /// Bitset row (words() words) of the segments properly crossing `sid`.
  const std::uint64_t* crossing_row(int sid) const {
    return cross_.data() + static_cast<std::size_t>(sid) * words_;
  }

  bool crosses_any(int sid, const std::vector<std::uint64_t>& segs) const {
    const std::uint64_t* row = crossing_row(sid);
    for (int w = 0; w < words_; ++w)
      if (row[w] & segs[w]) return true;
    return false;
  }

 private:
  int n_ = 0;
  int k_ = 0;
  int segments_ = 0;
  int words_ = 0;
  std::vector<Vec2> pos_;
  std::vector<int> layer_;
  std::vector<int> index_of_;
  std::vector<int> label_of_index_;
  std::vector<int> hull_;
  std::vector<int> hull_pos_;
  std::vector<int> first_label_;
  std::vector<std::uint8_t> empty_tri_;
  std::vector<std::uint8_t> empty_seg_;
  std::vector<int> seg_id_;
  std::vector<std::uint64_t> cross_;
};

}  // namespace cfs
