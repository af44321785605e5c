#include "skeinhom/planar.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "skeinhom/errors.hpp"

namespace skeinhom {

namespace {

bool chords_cross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  auto inside = [&](int x) { return a < x && x < b; };
  return inside(c) != inside(d);
}

void check_involution(std::span<const int> m) {
  const int n = static_cast<int>(m.size());
  for (int p = 0; p < n; ++p) {
    int q = m[p];
    if (q < 0 || q >= n || q == p || m[q] != p)
      throw InvalidBoundary("matching is not a fixed-point-free involution at point " + std::to_string(p));
  }
}

}  // namespace

bool is_noncrossing_cyclic(std::span<const int> m) {
  const int n = static_cast<int>(m.size());
  for (int p = 0; p < n; ++p) {
    if (m[p] < p) continue;
    for (int r = p + 1; r < n; ++r) {
      if (m[r] < r) continue;
      if (chords_cross(p, m[p], r, m[r])) return false;
    }
  }
  return true;
}

PlanarTangle::PlanarTangle(int bottom, int top, std::vector<int> matching, int free_circles)
    : bottom_(bottom), top_(top), matching_(std::move(matching)), free_circles_(free_circles) {
  if (bottom < 0 || top < 0 || free_circles < 0) throw InvalidBoundary("negative point or circle count");
  if (static_cast<int>(matching_.size()) != bottom + top)
    throw InvalidBoundary("matching has " + std::to_string(matching_.size()) + " entries, expected " +
                          std::to_string(bottom + top));
  if ((bottom + top) % 2 != 0) throw InvalidBoundary("odd number of boundary points");
  check_involution(matching_);
  std::vector<int> cyclic(matching_.size());
  for (int p = 0; p < size(); ++p) cyclic[cyclic_position(p)] = cyclic_position(matching_[p]);
  if (!is_noncrossing_cyclic(cyclic)) throw InvalidBoundary("matching " + literal() + " has crossing chords");
}

PlanarTangle PlanarTangle::identity(int n) {
  std::vector<int> m(2 * n);
  for (int i = 0; i < n; ++i) {
    m[i] = n + i;
    m[n + i] = i;
  }
  return {n, n, std::move(m)};
}

PlanarTangle PlanarTangle::nested_cups(int n) {
  std::vector<int> m(2 * n);
  for (int i = 0; i < 2 * n; ++i) m[i] = 2 * n - 1 - i;
  return {0, 2 * n, std::move(m)};
}

PlanarTangle PlanarTangle::nested_caps(int n) {
  std::vector<int> m(2 * n);
  for (int i = 0; i < 2 * n; ++i) m[i] = 2 * n - 1 - i;
  return {2 * n, 0, std::move(m)};
}

PlanarTangle PlanarTangle::parse(std::string_view literal, int bottom, int top, int free_circles) {
  std::vector<int> m;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < literal.size() && (literal[i] == ' ' || literal[i] == '\t')) ++i;
  };
  skip();
  if (i >= literal.size() || literal[i] != '[') throw InvalidBoundary("tangle literal must start with '['");
  ++i;
  skip();
  if (i < literal.size() && literal[i] == ']') {
    ++i;
  } else {
    while (true) {
      skip();
      int v = 0;
      auto [ptr, ec] = std::from_chars(literal.data() + i, literal.data() + literal.size(), v);
      if (ec != std::errc()) throw InvalidBoundary("bad integer in tangle literal '" + std::string(literal) + "'");
      i = static_cast<std::size_t>(ptr - literal.data());
      m.push_back(v);
      skip();
      if (i < literal.size() && literal[i] == ',') {
        ++i;
        continue;
      }
      if (i < literal.size() && literal[i] == ']') {
        ++i;
        break;
      }
      throw InvalidBoundary("unterminated tangle literal '" + std::string(literal) + "'");
    }
  }
  skip();
  if (i != literal.size()) throw InvalidBoundary("trailing characters in tangle literal");
  return {bottom, top, std::move(m), free_circles};
}

int PlanarTangle::through_degree() const {
  int t = 0;
  for (int p = 0; p < bottom_; ++p)
    if (matching_[p] >= bottom_) ++t;
  return t;
}

std::string PlanarTangle::literal() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < matching_.size(); ++i) out << (i ? "," : "") << matching_[i];
  out << ']';
  return out.str();
}

PlanarTangle compose(const PlanarTangle& upper, const PlanarTangle& lower) {
  const int m = upper.bottom_count();
  if (lower.top_count() != m)
    throw InvalidBoundary("compose: upper has " + std::to_string(m) + " bottom points, lower has " +
                          std::to_string(lower.top_count()) + " top points");
  const int k = lower.bottom_count();
  const int n = upper.top_count();
  // Result point r: r < k is lower's bottom point r, else upper's top point r-k.
  std::vector<int> result(k + n, -1);
  std::vector<char> seen(m, 0);
  auto walk = [&](bool in_upper, int point) {
    // point is an endpoint in the given tangle; follow chords until the outer boundary.
    while (true) {
      int q = in_upper ? upper.partner(point) : lower.partner(point);
      if (in_upper) {
        if (q >= m) return k + (q - m);
        seen[q] = 1;
        in_upper = false;
        point = lower.top_point(q);
      } else {
        if (q < k) return q;
        int iface = q - k;
        seen[iface] = 1;
        in_upper = true;
        point = iface;
      }
    }
  };
  for (int r = 0; r < k + n; ++r) {
    if (result[r] >= 0) continue;
    int s = r < k ? walk(false, r) : walk(true, m + (r - k));
    result[r] = s;
    result[s] = r;
  }
  int loops = 0;
  for (int i = 0; i < m; ++i) {
    if (seen[i]) continue;
    ++loops;
    int point = i;
    do {
      seen[point] = 1;
      int q = upper.partner(point);
      seen[q] = 1;
      int lp = lower.partner(lower.top_point(q)) - k;
      point = lp;
    } while (!seen[point]);
  }
  return {k, n, std::move(result), upper.free_circles() + lower.free_circles() + loops};
}

PlanarTangle juxtapose(const PlanarTangle& left, const PlanarTangle& right) {
  const int lb = left.bottom_count(), lt = left.top_count();
  const int rb = right.bottom_count(), rt = right.top_count();
  const int b = lb + rb, t = lt + rt;
  auto map_left = [&](int p) { return p < lb ? p : b + (p - lb); };
  auto map_right = [&](int p) { return p < rb ? lb + p : b + lt + (p - rb); };
  std::vector<int> m(b + t);
  for (int p = 0; p < left.size(); ++p) m[map_left(p)] = map_left(left.partner(p));
  for (int p = 0; p < right.size(); ++p) m[map_right(p)] = map_right(right.partner(p));
  return {b, t, std::move(m), left.free_circles() + right.free_circles()};
}

PlanarTangle reflect(const PlanarTangle& t, Axis axis) {
  const int b = t.bottom_count(), n = t.top_count();
  std::vector<int> m(t.size());
  if (axis == Axis::x) {
    auto f = [&](int p) { return p < b ? b - 1 - p : b + (n - 1 - (p - b)); };
    for (int p = 0; p < t.size(); ++p) m[f(p)] = f(t.partner(p));
    return {b, n, std::move(m), t.free_circles()};
  }
  auto f = [&](int p) { return p < b ? n + p : p - b; };
  for (int p = 0; p < t.size(); ++p) m[f(p)] = f(t.partner(p));
  return {n, b, std::move(m), t.free_circles()};
}

namespace {

// Noncrossing perfect matchings on positions 0..n-1 in a line, lexicographic.
void linear_matchings(std::vector<int>& cur, int n, std::vector<std::vector<int>>& out) {
  int p = 0;
  while (p < n && cur[p] >= 0) ++p;
  if (p == n) {
    out.push_back(cur);
    return;
  }
  // Partner of p must leave an even gap with all inner points unmatched.
  for (int q = p + 1; q < n; q += 2) {
    if (cur[q] >= 0) break;
    bool inner_free = true;
    for (int r = p + 1; r < q; ++r)
      if (cur[r] >= 0) inner_free = false;
    if (!inner_free) break;
    cur[p] = q;
    cur[q] = p;
    linear_matchings(cur, n, out);
    cur[p] = cur[q] = -1;
  }
}

}  // namespace

std::vector<PlanarTangle> enumerate_cap_tangles(int n_points) {
  return enumerate_minimal_tangles(n_points, 0);
}

std::vector<PlanarTangle> enumerate_minimal_tangles(int bottom, int top) {
  if (bottom < 0 || top < 0 || (bottom + top) % 2 != 0)
    throw InvalidBoundary("no perfect matchings on " + std::to_string(bottom) + "+" + std::to_string(top) +
                          " points");
  const int n = bottom + top;
  std::vector<std::vector<int>> cyclic;
  std::vector<int> cur(n, -1);
  linear_matchings(cur, n, cyclic);
  std::vector<int> point_at(n);  // cyclic position -> point index
  for (int p = 0; p < n; ++p) point_at[p < bottom ? p : bottom + top - 1 - (p - bottom)] = p;
  std::vector<PlanarTangle> out;
  out.reserve(cyclic.size());
  for (const auto& c : cyclic) {
    std::vector<int> m(n);
    for (int pos = 0; pos < n; ++pos) m[point_at[pos]] = point_at[c[pos]];
    out.emplace_back(bottom, top, std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const PlanarTangle& a, const PlanarTangle& b) {
              return std::lexicographical_compare(a.matching().begin(), a.matching().end(), b.matching().begin(),
                                                  b.matching().end());
            });
  return out;
}

CapTangle::CapTangle(PlanarTangle tangle, std::vector<int> partition)
    : tangle_(std::move(tangle)), partition_(std::move(partition)) {
  if (tangle_.top_count() != 0) throw InvalidBoundary("cap tangle must have no top points");
  int total = 0;
  for (int s : partition_) {
    if (s < 0) throw InvalidBoundary("negative block size");
    total += s;
  }
  if (total != tangle_.bottom_count())
    throw InvalidBoundary("partition sums to " + std::to_string(total) + ", tangle has " +
                          std::to_string(tangle_.bottom_count()) + " points");
}

int CapTangle::block_start(int b) const {
  return std::accumulate(partition_.begin(), partition_.begin() + b, 0);
}

CapTangle rotate(const CapTangle& t) {
  const int n = t.tangle().bottom_count();
  if (n == 0) return t;
  std::vector<int> m(n);
  for (int p = 0; p < n; ++p) m[(p + 1) % n] = (t.tangle().partner(p) + 1) % n;
  return {PlanarTangle(n, 0, std::move(m), t.tangle().free_circles()), t.partition()};
}

ClosedDiagram trace_circles(std::span<const Arc> arcs) {
  const int na = static_cast<int>(arcs.size());
  int max_vertex = -1;
  for (const auto& a : arcs) max_vertex = std::max({max_vertex, a[0], a[1]});
  // Up to two incident arc ends per vertex, encoded as 2*arc + end.
  std::vector<std::array<int, 2>> incident(max_vertex + 1, {-1, -1});
  for (int i = 0; i < na; ++i) {
    for (int e = 0; e < 2; ++e) {
      int v = arcs[i][e];
      if (v < 0) throw OpenBoundary("arc " + std::to_string(i) + " has a negative vertex id");
      auto& slot = incident[v];
      if (slot[0] < 0) {
        slot[0] = 2 * i + e;
      } else if (slot[1] < 0) {
        slot[1] = 2 * i + e;
      } else {
        throw OpenBoundary("vertex " + std::to_string(v) + " meets more than two arc ends");
      }
    }
  }
  for (int v = 0; v <= max_vertex; ++v) {
    if (incident[v][0] >= 0 && incident[v][1] < 0)
      throw OpenBoundary("boundary point " + std::to_string(v) + " is unpaired");
  }
  ClosedDiagram d;
  d.component_of.assign(na, -1);
  for (int start = 0; start < na; ++start) {
    if (d.component_of[start] >= 0) continue;
    const int c = d.size();
    d.circles.emplace_back();
    int arc = start, end = 0;  // entered through `end`
    do {
      d.component_of[arc] = c;
      d.circles[c].push_back(arc);
      int v = arcs[arc][1 - end];
      int here = 2 * arc + (1 - end);
      int next = incident[v][0] == here ? incident[v][1] : incident[v][0];
      arc = next / 2;
      end = next % 2;
    } while (arc != start);
  }
  return d;
}

std::vector<Arc> chords(const PlanarTangle& t, int base) {
  std::vector<Arc> out;
  for (int p = 0; p < t.size(); ++p)
    if (p < t.partner(p)) out.push_back({base + p, base + t.partner(p)});
  return out;
}

ClosedDiagram pair_closure(const PlanarTangle& a, const PlanarTangle& b) {
  if (a.bottom_count() + a.top_count() != b.bottom_count() + b.top_count())
    throw InvalidBoundary("pair_closure: boundary sizes differ");
  std::vector<Arc> arcs = chords(a);
  auto bc = chords(b);
  arcs.insert(arcs.end(), bc.begin(), bc.end());
  int fresh = a.size();
  for (int i = 0; i < a.free_circles() + b.free_circles(); ++i, ++fresh) arcs.push_back({fresh, fresh});
  return trace_circles(arcs);
}

}  // namespace skeinhom
