#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skeinhom {

// A crossingless (m,n)-tangle: a noncrossing perfect matching of the boundary
// points plus a count of closed components. Points are indexed bottom
// left-to-right (0..m-1), then top left-to-right (m..m+n-1).
class PlanarTangle {
 public:
  PlanarTangle() = default;
  PlanarTangle(int bottom, int top, std::vector<int> matching, int free_circles = 0);

  static PlanarTangle identity(int n);
  // n nested cups (bottom 0, top 2n) or caps (bottom 2n, top 0).
  static PlanarTangle nested_cups(int n);
  static PlanarTangle nested_caps(int n);
  // Partner-array literal such as "[1,0,3,2]"; the split is supplied separately.
  static PlanarTangle parse(std::string_view literal, int bottom, int top, int free_circles = 0);

  int bottom_count() const { return bottom_; }
  int top_count() const { return top_; }
  int size() const { return bottom_ + top_; }
  int partner(int p) const { return matching_[p]; }
  std::span<const int> matching() const { return matching_; }
  int free_circles() const { return free_circles_; }
  bool is_minimal() const { return free_circles_ == 0; }
  int through_degree() const;
  // Position of a point in the cyclic boundary order (bottom l-r, then top r-l).
  int cyclic_position(int p) const { return p < bottom_ ? p : bottom_ + top_ - 1 - (p - bottom_); }
  int top_point(int t) const { return bottom_ + t; }

  PlanarTangle without_circles() const { return {bottom_, top_, matching_, 0}; }
  std::string literal() const;

  auto operator<=>(const PlanarTangle&) const = default;

 private:
  int bottom_ = 0;
  int top_ = 0;
  std::vector<int> matching_;
  int free_circles_ = 0;
};

bool is_noncrossing_cyclic(std::span<const int> matching);

// upper: (m,n), lower: (k,m) -> (k,n); loops closed at the interface add to free_circles.
PlanarTangle compose(const PlanarTangle& upper, const PlanarTangle& lower);
// Side-by-side juxtaposition, left then right.
PlanarTangle juxtapose(const PlanarTangle& left, const PlanarTangle& right);

enum class Axis { x, y };
PlanarTangle reflect(const PlanarTangle& t, Axis axis);

std::vector<PlanarTangle> enumerate_cap_tangles(int n_points);
// All minimal (bottom, top)-tangles in lexicographic order of the partner array.
std::vector<PlanarTangle> enumerate_minimal_tangles(int bottom, int top);

class CapTangle {
 public:
  CapTangle(PlanarTangle tangle, std::vector<int> partition);
  const PlanarTangle& tangle() const { return tangle_; }
  const std::vector<int>& partition() const { return partition_; }
  // Index of the first point of block b.
  int block_start(int b) const;

 private:
  PlanarTangle tangle_;
  std::vector<int> partition_;
};

// One click: the last point moves to the first position. Block sizes are kept.
CapTangle rotate(const CapTangle& t);

using Arc = std::array<int, 2>;

// Circles of a closed 1-manifold given as arcs over vertex ids, each vertex
// incident to exactly two arc ends. A self-loop arc is a free circle.
struct ClosedDiagram {
  std::vector<std::vector<int>> circles;  // arc ids in cyclic order, smallest first
  std::vector<int> component_of;          // arc id -> circle index
  int size() const { return static_cast<int>(circles.size()); }
};

ClosedDiagram trace_circles(std::span<const Arc> arcs);

// Chords of a tangle as arcs over vertex ids base + point index, lower endpoint first.
std::vector<Arc> chords(const PlanarTangle& t, int base = 0);
// Union of two tangles on the same boundary, point j of a glued to point j of b.
ClosedDiagram pair_closure(const PlanarTangle& a, const PlanarTangle& b);

}  // namespace skeinhom
