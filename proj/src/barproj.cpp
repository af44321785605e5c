#include "skeinhom/barproj.hpp"

#include <algorithm>
#include <climits>

#include "skeinhom/errors.hpp"

namespace skeinhom {

SmallRing::SmallRing(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 0 || (m + n) % 2 != 0)
    throw InvalidBoundary("small ring (" + std::to_string(m) + "," + std::to_string(n) + ") needs m = n mod 2");
  objects_ = enumerate_minimal_tangles(m, n);
  const int k = size();
  basis_.assign(k, std::vector<GradedBasisModule>(k));
  min_reduced_ = INT_MAX;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      basis_[a][b] = hom_space(objects_[a], objects_[b]);
      for (Labeling l : reduced(a, b)) {
        int d = degree(a, b, l);
        if (d < 1) throw GradingError("reduced letter of degree " + std::to_string(d));
        min_reduced_ = std::min(min_reduced_, d);
      }
    }
  if (min_reduced_ == INT_MAX) min_reduced_ = 1;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (Labeling x = 0; x < Labeling(hom_dim(a, b)); ++x)
          for (Labeling y = 0; y < Labeling(hom_dim(b, c)); ++y)
            products_.emplace(std::tuple(a, b, c, x, y), pair_hom_elements(element(a, b, x), element(b, c, y)).state);
}

int SmallRing::index_of(const PlanarTangle& t) const {
  auto it = std::find(objects_.begin(), objects_.end(), t);
  if (it == objects_.end()) throw InvalidBoundary("tangle " + t.literal() + " is not an object of the ring");
  return static_cast<int>(it - objects_.begin());
}

HomElement SmallRing::element(int a, int b, Labeling l) const { return hom_basis_element(objects_[a], objects_[b], l); }

std::vector<Labeling> SmallRing::reduced(int a, int b) const {
  std::vector<Labeling> out;
  for (Labeling l = 0; l < Labeling(hom_dim(a, b)); ++l)
    if (a != b || l != 0) out.push_back(l);
  return out;
}

const StateVector& SmallRing::product(int a, int b, int c, Labeling x, Labeling y) const {
  return products_.at(std::tuple(a, b, c, x, y));
}

std::vector<BarWord> enumerate_bar_words(const SmallRing& ring, int depth) {
  std::vector<BarWord> out;
  std::vector<BarWord> layer;
  for (int a = 0; a < ring.size(); ++a) layer.push_back({{a}, {}});
  for (int r = 0; r <= depth; ++r) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (r == depth) break;
    std::vector<BarWord> next;
    for (const auto& w : layer)
      for (int b = 0; b < ring.size(); ++b)
        for (Labeling l : ring.reduced(w.objects.back(), b)) {
          BarWord v = w;
          v.objects.push_back(b);
          v.letters.push_back(l);
          next.push_back(std::move(v));
        }
    layer = std::move(next);
  }
  return out;
}

int word_degree(const SmallRing& ring, const BarWord& w) {
  int d = 0;
  for (int i = 0; i < w.length(); ++i) d += ring.degree(w.objects[i], w.objects[i + 1], w.letters[i]);
  return d;
}

std::string word_label(const SmallRing& ring, const BarWord& w) {
  std::string s = std::to_string(w.objects[0]);
  for (int i = 0; i < w.length(); ++i) {
    const int c = trace_circles(hom_arcs(ring.object(w.objects[i]), ring.object(w.objects[i + 1]))).size();
    s += "-" + labeling_string(w.letters[i], c) + "-" + std::to_string(w.objects[i + 1]);
  }
  return s;
}

BarElement inner_differential(const SmallRing& ring, const BarWord& w) {
  BarElement out;
  for (int i = 1; i < w.length(); ++i) {
    const int a = w.objects[i - 1], b = w.objects[i], c = w.objects[i + 1];
    const auto& p = ring.product(a, b, c, w.letters[i - 1], w.letters[i]);
    const std::int64_t sign = i % 2 == 0 ? 1 : -1;
    for (const auto& [l, coef] : p.terms()) {
      if (a == c && l == 0) continue;
      BarWord v;
      v.objects = w.objects;
      v.objects.erase(v.objects.begin() + i);
      v.letters = w.letters;
      v.letters.erase(v.letters.begin() + i - 1, v.letters.begin() + i + 1);
      v.letters.insert(v.letters.begin() + i - 1, l);
      out[v] += sign * coef;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

namespace {

BarWord drop_first(const BarWord& w) {
  return {{w.objects.begin() + 1, w.objects.end()}, {w.letters.begin() + 1, w.letters.end()}};
}

BarWord drop_last(const BarWord& w) {
  return {{w.objects.begin(), w.objects.end() - 1}, {w.letters.begin(), w.letters.end() - 1}};
}

// Objects and arrows of the bar differential; end actions come from the callbacks.
template <typename Fill, typename Left, typename Right>
SlotFamily bar_shaped_family(const SmallRing& ring, int depth, int slots, int extra_shift, Fill fill, Left left,
                             Right right) {
  SlotFamily fam;
  fam.complete_depth = depth;
  fam.bound = {ring.min_reduced_degree(), extra_shift};
  auto words = enumerate_bar_words(ring, depth);
  std::map<BarWord, int> index;
  for (const auto& w : words) {
    index[w] = static_cast<int>(fam.objects.size());
    fam.objects.push_back({-w.length(), word_degree(ring, w) + extra_shift, fill(w), word_label(ring, w)});
  }
  for (const auto& w : words) {
    const int r = w.length();
    if (r == 0) continue;
    const int from = index.at(w);
    const HomElement first = ring.element(w.objects[0], w.objects[1], w.letters[0]);
    fam.arrows.push_back({from, index.at(drop_first(w)), 1, left(w, first)});
    for (const auto& [v, c] : inner_differential(ring, w))
      fam.arrows.push_back({from, index.at(v), c, std::vector<std::optional<HomElement>>(slots)});
    const HomElement last = ring.element(w.objects[r - 1], w.objects[r], w.letters[r - 1]);
    fam.arrows.push_back({from, index.at(drop_last(w)), r % 2 == 0 ? 1 : -1, right(w, swap_ends(last))});
  }
  return fam;
}

// Arcs of s tagged by (copy, endpoints) and re-expressed on hom_arcs(x, y).
HomElement regroup(const StateVector& s, const std::vector<std::pair<int, Arc>>& tags, const PlanarTangle& x,
                   const PlanarTangle& y) {
  std::map<std::pair<int, Arc>, int> where;
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    auto [copy, arc] = tags[i];
    if (arc[0] > arc[1]) std::swap(arc[0], arc[1]);
    where[{copy, arc}] = i;
  }
  auto target = hom_arcs(x, y);
  const int first = x.size() / 2;
  std::vector<int> rep(target.size());
  for (int t = 0; t < static_cast<int>(target.size()); ++t) {
    Arc a = target[t];
    if (a[0] > a[1]) std::swap(a[0], a[1]);
    auto it = where.find({t < first ? 0 : 1, a});
    if (it == where.end()) throw std::logic_error("regroup: unmatched chord");
    rep[t] = it->second;
  }
  return {x, y, transport(s, std::move(target), rep)};
}

enum class Half { top, bottom };

HomElement embed(const HomElement& f, const PlanarTangle& c, Half half) {
  const int n = f.source.size();
  StateVector s = disjoint_union(f.state, hom_unit(c).state);
  std::vector<std::pair<int, Arc>> tags;
  auto place = [&](const PlanarTangle& t, int copy, bool on_top) {
    for (const auto& [u, v] : chords(t)) {
      int pu = t.cyclic_position(u), pv = t.cyclic_position(v);
      if (on_top) {
        pu += n;
        pv += n;
      }
      tags.push_back({copy, {pu, pv}});
    }
  };
  const bool f_top = half == Half::top;
  place(f.source, 0, f_top);
  place(f.target, 1, f_top);
  place(c, 0, !f_top);
  place(c, 1, !f_top);
  if (f_top) return regroup(s, tags, through_zero(f.source, c), through_zero(f.target, c));
  return regroup(s, tags, through_zero(c, f.source), through_zero(c, f.target));
}

}  // namespace

BarTruncation bar_truncate(const SmallRing& ring, int depth, std::vector<int> left_slot, std::vector<int> right_slot) {
  if (depth < 0) throw TruncationError("negative depth");
  BarTruncation t;
  t.depth = depth;
  t.words = enumerate_bar_words(ring, depth);
  for (const auto& w : t.words) t.groups[-w.length()].add({-w.length(), word_degree(ring, w)}, word_label(ring, w));
  t.family = bar_shaped_family(
      ring, depth, 2, 0,
      [&](const BarWord& w) {
        return std::vector<PlanarTangle>{ring.object(w.objects.front()), ring.object(w.objects.back())};
      },
      [](const BarWord&, const HomElement& f) { return std::vector<std::optional<HomElement>>{f, std::nullopt}; },
      [](const BarWord&, const HomElement& f) { return std::vector<std::optional<HomElement>>{std::nullopt, f}; });
  if (!left_slot.empty() || !right_slot.empty()) t.family.slots = {std::move(left_slot), std::move(right_slot)};
  t.certificate = t.family.bound;
  return t;
}

PlanarTangle bend_top(const PlanarTangle& t) {
  const int n = t.size();
  std::vector<int> m(n);
  for (int p = 0; p < n; ++p) m[t.cyclic_position(p)] = t.cyclic_position(t.partner(p));
  return {0, n, std::move(m)};
}

PlanarTangle bend_bottom(const PlanarTangle& t) {
  const int n = t.size();
  std::vector<int> m(n);
  for (int p = 0; p < n; ++p) m[t.cyclic_position(p)] = t.cyclic_position(t.partner(p));
  return {n, 0, std::move(m)};
}

PlanarTangle through_zero(const PlanarTangle& a, const PlanarTangle& b) {
  const int n = a.size();
  if (b.size() != n) throw InvalidBoundary("through_zero: point counts differ");
  std::vector<int> m(2 * n);
  for (int p = 0; p < n; ++p) {
    m[n + a.cyclic_position(p)] = n + a.cyclic_position(a.partner(p));
    m[b.cyclic_position(p)] = b.cyclic_position(b.partner(p));
  }
  return {n, n, std::move(m)};
}

HomElement embed_top(const HomElement& f, const PlanarTangle& c) { return embed(f, c, Half::top); }
HomElement embed_bottom(const HomElement& f, const PlanarTangle& c) { return embed(f, c, Half::bottom); }

SlotFamily bproj_truncate(int strands, int depth, int split_bottom) {
  if (strands < 0 || strands % 2 != 0)
    throw InvalidBoundary("no through-degree-zero tangles on " + std::to_string(strands) + " strands");
  if (depth < 0) throw TruncationError("negative depth");
  const int m = split_bottom < 0 ? strands / 2 : split_bottom;
  SmallRing ring(m, strands - m);
  auto fam = bar_shaped_family(
      ring, depth, 1, strands / 2,
      [&](const BarWord& w) {
        return std::vector<PlanarTangle>{
            through_zero(ring.object(w.objects.front()), ring.object(w.objects.back()))};
      },
      [&](const BarWord& w, const HomElement& f) {
        return std::vector<std::optional<HomElement>>{embed_top(f, ring.object(w.objects.back()))};
      },
      [&](const BarWord& w, const HomElement& f) {
        return std::vector<std::optional<HomElement>>{embed_bottom(f, ring.object(w.objects.front()))};
      });
  for (const auto& o : fam.objects)
    if (o.fill[0].through_degree() != 0) throw std::logic_error("projector object with through strands");
  return fam;
}

SlotFamily identity_family(int strands) {
  SlotFamily f;
  f.objects.push_back({0, 0, {PlanarTangle::identity(strands)}, "id"});
  f.bound = {1, 0};
  return f;
}

FamilyMap counit(const SlotFamily& projector, int strands) {
  FamilyMap map;
  const auto id = PlanarTangle::identity(strands);
  for (int o = 0; o < static_cast<int>(projector.objects.size()); ++o) {
    const auto& obj = projector.objects[o];
    if (obj.degree != 0) continue;
    map.arrows.push_back({o, 0, 1, {hom_basis_element(obj.fill[0], id, 0)}});
  }
  return map;
}

SlotFamily counit_cone(int strands, int depth) {
  auto p = bproj_truncate(strands, depth);
  return family_cone(p, identity_family(strands), counit(p, strands));
}

SlotFamily hardcoded_p2(int depth) {
  const auto one = PlanarTangle::identity(2);
  const auto e = PlanarTangle::parse("[1,0,3,2]", 2, 2);
  SlotFamily f;
  f.complete_depth = depth;
  f.bound = {2, -1};
  f.objects.push_back({0, 0, {one}, "1"});
  for (int s = 0; s < depth; ++s) f.objects.push_back({-(s + 1), 2 * s + 1, {e}, "e" + std::to_string(s)});
  if (depth >= 1) f.arrows.push_back({1, 0, 1, {hom_basis_element(e, one, 0)}});
  // Dots on the bottom and top circles of e against e.
  const HomElement bottom = hom_basis_element(e, e, 1);
  const HomElement top = hom_basis_element(e, e, 2);
  for (int s = 0; s + 1 < depth; ++s) {
    f.arrows.push_back({s + 2, s + 1, 1, {top}});
    f.arrows.push_back({s + 2, s + 1, s % 2 == 0 ? -1 : 1, {bottom}});
  }
  return f;
}

std::map<PlanarTangle, LaurentPoly> euler_class(const SlotFamily& f) {
  std::map<PlanarTangle, LaurentPoly> out;
  for (const auto& o : f.objects) {
    if (o.fill.size() != 1) throw InvalidBoundary("euler_class needs a single-slot family");
    out[o.fill[0]].add(o.shift, o.degree % 2 == 0 ? 1 : -1);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == LaurentPoly{}; });
  return out;
}

std::map<int, GradedBasisModule> object_counts(const SlotFamily& f) {
  std::map<int, GradedBasisModule> out;
  for (const auto& o : f.objects) out[o.degree].add({o.degree, o.shift}, o.label);
  return out;
}

Network hom_network(const PlanarTangle& b, const SlotFamily& f, const PlanarTangle& below) {
  const int n = below.bottom_count();
  if (below.top_count() != n || b.bottom_count() != n || b.top_count() != n)
    throw InvalidBoundary("hom_network needs (N,N)-tangles");
  // Vertices: bottom 0..n-1, interface n..2n-1, top 2n..3n-1.
  Network net;
  net.vertex_count = 3 * n;
  for (const auto& [u, v] : chords(b)) {
    auto at = [&](int p) { return p < n ? p : 2 * n + (p - n); };
    net.fixed.push_back({at(u), at(v)});
  }
  for (const auto& [u, v] : chords(below)) net.fixed.push_back({u, v});
  for (int i = 0; i < below.free_circles() + b.free_circles(); ++i) {
    net.fixed.push_back({net.vertex_count, net.vertex_count});
    ++net.vertex_count;
  }
  SlotFamily placed = f;
  std::vector<int> slot;
  for (int i = 0; i < 2 * n; ++i) slot.push_back(n + i);
  placed.slots = {slot};
  net.families.push_back(std::move(placed));
  net.offset_quarters = 4 * n;
  return net;
}

namespace {

// Glue x in H(a,a') above y in H(b,b') along the interface: one band per interface point.
HomElement glue(const HomElement& x, const HomElement& y) {
  const PlanarTangle& a = x.source;
  const PlanarTangle& b = y.source;
  const int m = a.bottom_count();
  if (b.top_count() != m) throw InvalidBoundary("glue: interface mismatch");
  const int k = b.bottom_count();
  const auto upper = compose(x.source, y.source);
  const auto lower = compose(x.target, y.target);
  if (!upper.is_minimal() || !lower.is_minimal())
    throw InvalidBoundary("composite tangle has closed components");
  const int ha = a.size() / 2, hb = b.size() / 2;
  const int sh = x.state.arcs().empty() ? 0 : max_vertex(x.state.arcs()) + 1;
  StateVector cur = disjoint_union(x.state, y.state);
  std::vector<Arc> arcs = cur.arcs();
  auto arc_at = [&](int vertex, int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      for (int e = 0; e < 2; ++e)
        if (arcs[i][e] == vertex) return std::pair(i, e);
    throw std::logic_error("glue: vertex without arc");
  };
  for (int j = 0; j < m; ++j) {
    const int va = j, vb = sh + k + j;
    auto [bi, be] = arc_at(vb, 2 * ha, 2 * ha + hb);
    auto [ai, ae] = arc_at(va, ha, 2 * ha);
    arcs[bi][be] = va;
    arcs[ai][ae] = vb;
    cur = rewire(cur, arcs);
  }
  // Copy 0 holds the a and b chords, copy 1 the a' and b' chords.
  const int na = static_cast<int>(arcs.size());
  std::vector<std::vector<int>> by_vertex(max_vertex(arcs) + 1);
  for (int i = 0; i < na; ++i)
    for (int e = 0; e < 2; ++e) by_vertex[arcs[i][e]].push_back(i);
  auto copy_of = [&](int i) { return (i < ha || (i >= 2 * ha && i < 2 * ha + hb)) ? 0 : 1; };
  // Any arc of the right copy at an outer endpoint lies on the composite chord's circle.
  std::vector<int> rep;
  auto target = hom_arcs(upper, lower);
  const int first = upper.size() / 2;
  for (int t = 0; t < static_cast<int>(target.size()); ++t) {
    const int copy = t < first ? 0 : 1;
    const int p = target[t][0];
    const int v = p < k ? sh + p : m + (p - k);
    int found = -1;
    for (int i : by_vertex[v])
      if (copy_of(i) == copy) found = i;
    if (found < 0) throw std::logic_error("glue: no arc at outer point");
    rep.push_back(found);
  }
  return {upper, lower, transport(cur, std::move(target), rep)};
}

}  // namespace

HomElement star_id(const HomElement& f, const PlanarTangle& below) { return glue(f, hom_unit(below)); }
HomElement id_star(const PlanarTangle& above, const HomElement& g) { return glue(hom_unit(above), g); }

BarElement unit_word(const SmallRing&, int object) { return {{BarWord{{object}, {}}, 1}}; }

namespace {

void add_expanded(BarElement& out, const std::vector<int>& objects,
                  const std::vector<HomElement>& letters, std::int64_t coef) {
  // Expand each letter in the basis and multiply out.
  std::vector<std::pair<std::vector<Labeling>, std::int64_t>> partial{{{}, coef}};
  for (const auto& f : letters) {
    std::vector<std::pair<std::vector<Labeling>, std::int64_t>> next;
    for (const auto& [ls, c] : partial)
      for (const auto& [l, fc] : f.state.terms()) {
        auto v = ls;
        v.push_back(l);
        next.push_back({std::move(v), c * fc});
      }
    partial = std::move(next);
  }
  for (auto& [ls, c] : partial) {
    bool identity = false;
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (objects[i] == objects[i + 1] && ls[i] == 0) identity = true;
    if (identity) continue;
    out[BarWord{objects, ls}] += c;
  }
}

}  // namespace

BarElement shuffle_product(const SmallRing& upper, const SmallRing& lower, const SmallRing& composite,
                           const BarElement& x, const BarElement& y, int max_depth) {
  if (upper.m() != lower.n() || composite.m() != lower.m() || composite.n() != upper.n())
    throw InvalidBoundary("shuffle_product: ring boundaries do not match");
  BarElement out;
  for (const auto& [wx, cx] : x)
    for (const auto& [wy, cy] : y) {
      const int r = wx.length(), s = wy.length();
      if (r + s > max_depth)
        throw TruncationError("shuffle of lengths " + std::to_string(r) + "+" + std::to_string(s) +
                              " exceeds depth " + std::to_string(max_depth));
      // Bit i of the mask set means step i advances the upper word.
      std::vector<int> steps(r + s, 0);
      std::fill(steps.begin(), steps.begin() + r, 1);
      std::sort(steps.begin(), steps.end());
      do {
        int i = 0, j = 0;
        int inversions = 0;
        std::vector<int> objs{composite.index_of(compose(upper.object(wx.objects[0]), lower.object(wy.objects[0])))};
        std::vector<HomElement> letters;
        for (int st : steps) {
          if (st == 1) {
            inversions += j;
            HomElement f = upper.element(wx.objects[i], wx.objects[i + 1], wx.letters[i]);
            letters.push_back(star_id(f, lower.object(wy.objects[j])));
            ++i;
          } else {
            HomElement g = lower.element(wy.objects[j], wy.objects[j + 1], wy.letters[j]);
            letters.push_back(id_star(upper.object(wx.objects[i]), g));
            ++j;
          }
          objs.push_back(composite.index_of(compose(upper.object(wx.objects[i]), lower.object(wy.objects[j]))));
        }
        add_expanded(out, objs, letters, (inversions % 2 == 0 ? 1 : -1) * cx * cy);
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace skeinhom
