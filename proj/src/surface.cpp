#include "skeinhom/surface.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

#include "skeinhom/errors.hpp"

namespace skeinhom {

int Surface::seam_index(const std::string& id) const {
  auto it = std::find(spec.seams.begin(), spec.seams.end(), id);
  if (it == spec.seams.end()) throw SpecError("unknown seam '" + id + "'");
  return static_cast<int>(it - spec.seams.begin());
}

int Surface::arc_index(const std::string& id) const {
  for (std::size_t i = 0; i < spec.arcs.size(); ++i)
    if (spec.arcs[i].id == id) return static_cast<int>(i);
  throw SpecError("unknown arc '" + id + "'");
}

Surface validate_surface(const SurfaceSpec& spec) {
  Surface s;
  s.spec = spec;
  if (spec.regions.empty()) throw SpecError("surface has no regions");
  std::map<std::string, int> arc_id, seam_id;
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) {
    const auto& a = spec.arcs[i];
    if (a.sign != 1 && a.sign != -1) throw SpecError("arc '" + a.id + "' has sign " + std::to_string(a.sign));
    if (!arc_id.emplace(a.id, static_cast<int>(i)).second) throw SpecError("repeated arc id '" + a.id + "'");
  }
  for (std::size_t i = 0; i < spec.seams.size(); ++i)
    if (!seam_id.emplace(spec.seams[i], static_cast<int>(i)).second)
      throw SpecError("repeated seam id '" + spec.seams[i] + "'");
  s.arc_at.assign(spec.arcs.size(), {});
  s.sides.assign(spec.seams.size(), {});
  for (int r = 0; r < static_cast<int>(spec.regions.size()); ++r)
    for (int k = 0; k < static_cast<int>(spec.regions[r].size()); ++k) {
      const Segment& seg = spec.regions[r][k];
      const std::string where = "region " + std::to_string(r) + ", segment " + std::to_string(k);
      if (seg.kind == Segment::Kind::arc) {
        auto it = arc_id.find(seg.id);
        if (it == arc_id.end()) throw SpecError(where + ": unknown arc '" + seg.id + "'");
        if (s.arc_at[it->second].region >= 0) throw SpecError(where + ": arc '" + seg.id + "' used twice");
        s.arc_at[it->second] = {r, k};
        continue;
      }
      auto it = seam_id.find(seg.id);
      if (it == seam_id.end()) throw SpecError(where + ": unknown seam '" + seg.id + "'");
      if (seg.side != 1 && seg.side != -1) throw SpecError(where + ": seam side must be + or -");
      auto& slot = seg.side > 0 ? s.sides[it->second].first : s.sides[it->second].second;
      if (slot.region >= 0)
        throw SpecError(where + ": seam '" + seg.id + "' has two " + (seg.side > 0 ? "+" : "-") + " sides");
      slot = {r, k};
    }
  for (std::size_t i = 0; i < spec.arcs.size(); ++i)
    if (s.arc_at[i].region < 0) throw SpecError("arc '" + spec.arcs[i].id + "' lies on no region");
  for (std::size_t i = 0; i < spec.seams.size(); ++i) {
    if (s.sides[i].first.region < 0) throw SpecError("seam '" + spec.seams[i] + "' has a dangling + side");
    if (s.sides[i].second.region < 0) throw SpecError("seam '" + spec.seams[i] + "' has a dangling - side");
  }
  // Regions glued along seams must form one surface.
  std::vector<int> parent(spec.regions.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [p, m] : s.sides) parent[find(p.region)] = find(m.region);
  for (int r = 0; r < s.region_count(); ++r)
    if (find(r) != find(0)) throw SpecError("region " + std::to_string(r) + " is not connected to region 0");
  return s;
}

namespace {

int block_size(const SurfaceTangle& t, SegmentRef ref) { return t.regions[ref.region].partition()[ref.segment]; }

}  // namespace

void check_tangle(const Surface& s, const SurfaceTangle& t) {
  if (static_cast<int>(t.regions.size()) != s.region_count())
    throw InvalidBoundary("tangle has " + std::to_string(t.regions.size()) + " regions, surface has " +
                          std::to_string(s.region_count()));
  for (int r = 0; r < s.region_count(); ++r)
    if (t.regions[r].partition().size() != s.spec.regions[r].size())
      throw InvalidBoundary("region " + std::to_string(r) + ": tangle has " +
                            std::to_string(t.regions[r].partition().size()) + " blocks for " +
                            std::to_string(s.spec.regions[r].size()) + " segments");
  for (int g = 0; g < s.seam_count(); ++g) {
    const auto [p, m] = s.sides[g];
    if (block_size(t, p) != block_size(t, m))
      throw InvalidBoundary("seam '" + s.spec.seams[g] + "' meets the tangle " + std::to_string(block_size(t, p)) +
                            " times on its + side and " + std::to_string(block_size(t, m)) + " on its - side");
  }
}

int seam_points(const Surface& s, const SurfaceTangle& t, int seam) { return block_size(t, s.sides[seam].first); }
int arc_points(const Surface& s, const SurfaceTangle& t, int arc) { return block_size(t, s.arc_at[arc]); }

bool same_tangle(const SurfaceTangle& a, const SurfaceTangle& b) {
  if (a.regions.size() != b.regions.size()) return false;
  for (std::size_t r = 0; r < a.regions.size(); ++r)
    if (a.regions[r].tangle() != b.regions[r].tangle() || a.regions[r].partition() != b.regions[r].partition())
      return false;
  return true;
}

int auto_depth(int hmin, int hint) { return std::max(1 - std::min(hmin, 0), hint); }

HomComplex::HomComplex(Surface surface, SurfaceTangle t, SurfaceTangle s, int depth,
                       std::map<std::string, PlanarTangle> boundary, int hmin)
    : surface_(std::move(surface)), t_(std::move(t)), s_(std::move(s)), depth_(depth < 0 ? auto_depth(hmin) : depth) {
  check_tangle(surface_, t_);
  check_tangle(surface_, s_);
  for (auto& [id, v] : boundary) {
    surface_.arc_index(id);
    if (v != PlanarTangle::identity(v.bottom_count())) boundary_.emplace(id, v);
  }
  const int nr = surface_.region_count();
  for (int r = 0; r < nr; ++r)
    if (!t_.regions[r].tangle().is_minimal() || !s_.regions[r].tangle().is_minimal())
      throw InvalidBoundary("region " + std::to_string(r) + " carries a closed component");

  int next = 0;
  t_point_.resize(nr);
  s_point_.resize(nr);
  for (int r = 0; r < nr; ++r)
    for (int p = 0; p < t_.regions[r].tangle().size(); ++p) t_point_[r].push_back(next++);
  for (int r = 0; r < nr; ++r)
    for (int p = 0; p < s_.regions[r].tangle().size(); ++p) s_point_[r].push_back(next++);

  int quarters = 0;
  for (int r = 0; r < nr; ++r) {
    for (const auto& [u, v] : chords(t_.regions[r].tangle())) net_.fixed.push_back({t_point_[r][u], t_point_[r][v]});
    quarters += t_.regions[r].tangle().size() + s_.regions[r].tangle().size();
  }
  for (int r = 0; r < nr; ++r)
    for (const auto& [u, v] : chords(s_.regions[r].tangle())) net_.fixed.push_back({s_point_[r][u], s_point_[r][v]});

  int loops = 0;
  for (std::size_t a = 0; a < surface_.spec.arcs.size(); ++a) {
    const auto& arc = surface_.spec.arcs[a];
    const SegmentRef ref = surface_.arc_at[a];
    const int nt = block_size(t_, ref), ns = block_size(s_, ref);
    PlanarTangle v = PlanarTangle::identity(nt);
    if (auto it = boundary_.find(arc.id); it != boundary_.end()) v = arc.sign > 0 ? it->second : reflect(it->second, Axis::x);
    if (v.bottom_count() != ns || v.top_count() != nt)
      throw InvalidBoundary("arc '" + arc.id + "' joins " + std::to_string(ns) + " points of S to " +
                            std::to_string(nt) + " of T through a (" + std::to_string(v.bottom_count()) + "," +
                            std::to_string(v.top_count()) + ") tangle");
    const int t0 = t_.regions[ref.region].block_start(ref.segment);
    const int s0 = s_.regions[ref.region].block_start(ref.segment);
    auto at = [&](int p) { return p < ns ? s_point_[ref.region][s0 + p] : t_point_[ref.region][t0 + p - ns]; };
    for (const auto& [u, w] : chords(v)) net_.fixed.push_back({at(u), at(w)});
    loops += v.free_circles();
  }
  for (int i = 0; i < loops; ++i) net_.fixed.push_back({next, next}), ++next;

  for (int g = 0; g < surface_.seam_count(); ++g) {
    const auto [plus, minus] = surface_.sides[g];
    const int nt = block_size(t_, plus), ns = block_size(s_, plus);
    if (block_size(s_, minus) != ns || block_size(t_, minus) != nt) throw std::logic_error("seam count mismatch");
    // + side in region order; the - side runs the other way along the seam.
    std::vector<int> left, right;
    const int tp = t_.regions[plus.region].block_start(plus.segment);
    const int sp = s_.regions[plus.region].block_start(plus.segment);
    const int tm = t_.regions[minus.region].block_start(minus.segment);
    const int sm = s_.regions[minus.region].block_start(minus.segment);
    for (int j = 0; j < ns; ++j) left.push_back(s_point_[plus.region][sp + j]);
    for (int j = 0; j < nt; ++j) left.push_back(t_point_[plus.region][tp + j]);
    for (int j = ns - 1; j >= 0; --j) right.push_back(s_point_[minus.region][sm + j]);
    for (int j = nt - 1; j >= 0; --j) right.push_back(t_point_[minus.region][tm + j]);
    rings_.push_back(std::make_shared<SmallRing>(ns, nt));
    bars_.push_back(bar_truncate(*rings_.back(), depth_, std::move(left), std::move(right)));
    auto& idx = word_index_.emplace_back();
    for (int w = 0; w < static_cast<int>(bars_.back().words.size()); ++w) idx.emplace(bars_.back().words[w], w);
    net_.families.push_back(bars_.back().family);
  }
  net_.vertex_count = next;
  net_.offset_quarters = quarters;
}

int HomComplex::word_index(int seam, const BarWord& w) const {
  auto it = word_index_[seam].find(w);
  if (it == word_index_[seam].end())
    throw TruncationError("bar word of length " + std::to_string(w.length()) + " exceeds depth " +
                          std::to_string(depth_));
  return it->second;
}

AssembledNetwork HomComplex::assemble(int qmin, int qmax) const { return skeinhom::assemble(net_, qmin, qmax); }

const AssembledNetwork& HomComplex::full() const {
  if (!full_) full_ = std::make_shared<AssembledNetwork>(assemble(INT_MIN, INT_MAX));
  return *full_;
}

int HomComplex::degree(const NetworkGenerator& g) const {
  int d = 0;
  for (std::size_t f = 0; f < g.objects.size(); ++f) d += net_.families[f].objects[g.objects[f]].degree;
  return d;
}

int HomComplex::q_degree(const NetworkGenerator& g) const {
  int shift = 0;
  for (std::size_t f = 0; f < g.objects.size(); ++f) shift += net_.families[f].objects[g.objects[f]].shift;
  const int c = trace_circles(network_arcs(net_, g.objects)).size();
  return integral_offset(net_.offset_quarters) + shift + 2 * std::popcount(g.labeling) - c;
}

BigradedHomology hom_homology(const HomComplex& c, const Window& w) {
  return smith_homology(c.assemble(w.qmin, w.qmax).complex, w);
}

SurfaceElement element_differential(const HomComplex& c, const SurfaceElement& x) {
  const auto& a = c.full();
  SurfaceElement out;
  for (const auto& [g, coef] : x) {
    const int k = c.degree(g);
    const int col = a.find(k, g);
    if (col < 0) throw InvalidBoundary("generator is not in the complex");
    auto it = a.generators.find(k + 1);
    for (const auto& e : a.complex.differential(k).entries())
      if (e.col == col) out[it->second[e.row]] += coef * e.value;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::vector<NetworkGenerator> basis(const HomComplex& c, int degree, int q) {
  std::vector<NetworkGenerator> out;
  auto a = c.assemble(q, q);
  if (auto it = a.generators.find(degree); it != a.generators.end()) out = it->second;
  return out;
}

namespace {

// Re-express s on target arcs whose vertices map into s's diagram; each target
// arc takes an arc at the image of its first endpoint as representative.
StateVector transport_by_vertex(const StateVector& s, std::vector<Arc> target, const std::vector<int>& vertex_map) {
  std::vector<int> at(max_vertex(s.arcs()) + 1, -1);
  for (int i = 0; i < static_cast<int>(s.arcs().size()); ++i)
    for (int e = 0; e < 2; ++e) at[s.arcs()[i][e]] = i;
  std::vector<int> rep;
  for (const auto& arc : target) {
    const int v = vertex_map.at(arc[0]);
    if (v < 0 || v >= static_cast<int>(at.size()) || at[v] < 0) throw std::logic_error("transport: unmapped vertex");
    rep.push_back(at[v]);
  }
  return transport(s, std::move(target), rep);
}

StateVector generator_state(const HomComplex& c, const NetworkGenerator& g) {
  StateVector s(network_arcs(c.network(), g.objects));
  s.add(g.labeling, 1);
  return s;
}

}  // namespace

SurfaceElement compose(const HomComplex& a, const SurfaceElement& x, const HomComplex& b, const SurfaceElement& y,
                       const HomComplex& target) {
  if (!same_tangle(a.s(), b.t())) throw InvalidBoundary("compose: middle tangles differ");
  if (!same_tangle(target.t(), a.t()) || !same_tangle(target.s(), b.s()))
    throw InvalidBoundary("compose: target complex has the wrong ends");
  if (!a.identity_boundary() || !b.identity_boundary() || !target.identity_boundary())
    throw InvalidBoundary("compose supports identity boundary tangles only");
  const int nr = a.surface().region_count();
  const int ng = a.surface().seam_count();
  if (b.surface().region_count() != nr || target.surface().region_count() != nr || b.surface().seam_count() != ng ||
      target.surface().seam_count() != ng)
    throw InvalidBoundary("compose: complexes live on different surfaces");

  // Arc blocks: T chords, then S chords, in region order.
  auto chord_count = [](const SurfaceTangle& t) {
    int n = 0;
    for (const auto& r : t.regions) n += r.tangle().size() / 2;
    return n;
  };
  const int a_s_begin = chord_count(a.t());
  const int b_t_begin = 0;

  SurfaceElement out;
  for (const auto& [gx, cx] : x)
    for (const auto& [gy, cy] : y) {
      // Words at each seam and the Koszul sign of interleaving them.
      std::vector<int> lx(ng), ly(ng);
      for (int i = 0; i < ng; ++i) {
        lx[i] = a.bar(i).words[gx.objects[i]].length();
        ly[i] = b.bar(i).words[gy.objects[i]].length();
      }
      int parity = 0;
      for (int i = 0; i < ng; ++i)
        for (int j = i + 1; j < ng; ++j) parity += ly[i] * lx[j];
      std::vector<std::pair<std::vector<int>, std::int64_t>> words{{{}, (parity % 2 ? -1 : 1) * cx * cy}};
      for (int i = 0; i < ng; ++i) {
        BarElement wx{{a.bar(i).words[gx.objects[i]], 1}};
        BarElement wy{{b.bar(i).words[gy.objects[i]], 1}};
        auto prod = shuffle_product(a.ring(i), b.ring(i), target.ring(i), wx, wy, target.depth());
        std::vector<std::pair<std::vector<int>, std::int64_t>> next;
        for (const auto& [ws, c] : words)
          for (const auto& [w, pc] : prod) {
            auto v = ws;
            v.push_back(target.word_index(i, w));
            next.push_back({std::move(v), c * pc});
          }
        words = std::move(next);
      }
      if (words.empty()) continue;

      // Region level: one saddle per chord of the middle tangle.
      StateVector sx = generator_state(a, gx), sy = generator_state(b, gy);
      const int shift = max_vertex(sx.arcs()) + 1;
      const int n1 = static_cast<int>(sx.arcs().size());
      StateVector cur = disjoint_union(sx, sy);
      std::vector<Arc> arcs = cur.arcs();
      int k = 0;
      for (int r = 0; r < nr; ++r)
        for (const auto& [p, q] : chords(a.s().regions[r].tangle())) {
          arcs[a_s_begin + k] = {a.s_vertex(r, p), b.t_vertex(r, p) + shift};
          arcs[n1 + b_t_begin + k] = {a.s_vertex(r, q), b.t_vertex(r, q) + shift};
          cur = rewire(cur, arcs);
          ++k;
        }
      std::vector<int> vmap(target.network().vertex_count, -1);
      for (int r = 0; r < nr; ++r) {
        for (int p = 0; p < target.t().regions[r].tangle().size(); ++p) vmap[target.t_vertex(r, p)] = a.t_vertex(r, p);
        for (int p = 0; p < target.s().regions[r].tangle().size(); ++p)
          vmap[target.s_vertex(r, p)] = b.s_vertex(r, p) + shift;
      }
      auto tarcs = network_arcs(target.network(), words.front().first);
      if (trace_circles(tarcs).size() != cur.circle_count())
        throw InvalidBoundary("compose: the composite has closed components");
      StateVector moved = transport_by_vertex(cur, std::move(tarcs), vmap);
      for (const auto& [objs, c] : words)
        for (const auto& [l, sc] : moved.terms()) out[NetworkGenerator{objs, l}] += c * sc;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

SurfaceElement identity_unit(const HomComplex& c) {
  if (!same_tangle(c.t(), c.s()) || !c.identity_boundary())
    throw InvalidBoundary("identity_unit needs T = S and identity boundary tangles");
  NetworkGenerator g;
  for (int i = 0; i < c.surface().seam_count(); ++i) {
    const auto& ring = c.ring(i);
    const int id = ring.index_of(PlanarTangle::identity(ring.n()));
    g.objects.push_back(c.word_index(i, BarWord{{id}, {}}));
  }
  return {{g, 1}};
}

namespace {

struct MergedRegion {
  std::vector<Segment> segments;
  std::vector<std::pair<int, int>> blocks;  // (old region, old segment) per new segment
};

MergedRegion merged_layout(const Surface& s, int seam) {
  const auto [plus, minus] = s.sides[seam];
  if (plus.region == minus.region)
    throw SpecError("removing seam '" + s.spec.seams[seam] + "' leaves a region that is not a disk");
  MergedRegion m;
  for (const SegmentRef side : {plus, minus}) {
    const auto& segs = s.spec.regions[side.region];
    const int n = static_cast<int>(segs.size());
    for (int i = 1; i < n; ++i) {
      const int k = (side.segment + i) % n;
      m.segments.push_back(segs[k]);
      m.blocks.push_back({side.region, k});
    }
  }
  return m;
}

}  // namespace

Surface remove_seam(const Surface& s, int seam) {
  const auto [plus, minus] = s.sides[seam];
  auto m = merged_layout(s, seam);
  SurfaceSpec out;
  out.arcs = s.spec.arcs;
  for (int g = 0; g < s.seam_count(); ++g)
    if (g != seam) out.seams.push_back(s.spec.seams[g]);
  const int keep = std::min(plus.region, minus.region);
  for (int r = 0; r < s.region_count(); ++r) {
    if (r == keep) out.regions.push_back(m.segments);
    else if (r != plus.region && r != minus.region) out.regions.push_back(s.spec.regions[r]);
  }
  return validate_surface(out);
}

SurfaceTangle merge_tangle(const Surface& s, const SurfaceTangle& t, int seam) {
  check_tangle(s, t);
  const auto [plus, minus] = s.sides[seam];
  auto m = merged_layout(s, seam);
  const int n = seam_points(s, t, seam);
  // New index of every surviving point, keyed by (region, flat point).
  std::map<std::pair<int, int>, int> pos;
  std::vector<std::pair<int, int>> points;
  std::vector<int> partition;
  for (const auto& [r, k] : m.blocks) {
    const auto& cap = t.regions[r];
    const int start = cap.block_start(k);
    partition.push_back(cap.partition()[k]);
    for (int j = 0; j < cap.partition()[k]; ++j) {
      pos[{r, start + j}] = static_cast<int>(points.size());
      points.push_back({r, start + j});
    }
  }
  const int ps = t.regions[plus.region].block_start(plus.segment);
  const int ms = t.regions[minus.region].block_start(minus.segment);
  // Seam point j on the + side is point n-1-j on the - side.
  auto across = [&](std::pair<int, int> pt) -> std::optional<std::pair<int, int>> {
    auto [r, p] = pt;
    if (r == plus.region && p >= ps && p < ps + n) return std::pair(minus.region, ms + n - 1 - (p - ps));
    if (r == minus.region && p >= ms && p < ms + n) return std::pair(plus.region, ps + n - 1 - (p - ms));
    return std::nullopt;
  };
  std::set<std::pair<int, int>> seen;
  auto follow = [&](std::pair<int, int> pt) {
    while (true) {
      pt = {pt.first, t.regions[pt.first].tangle().partner(pt.second)};
      auto next = across(pt);
      if (!next) return pt;
      seen.insert(pt);
      seen.insert(*next);
      pt = *next;
    }
  };
  std::vector<int> matching(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) matching[i] = pos.at(follow(points[i]));
  int loops = 0;
  for (int j = 0; j < n; ++j) {
    std::pair<int, int> start{plus.region, ps + j};
    if (seen.count(start)) continue;
    ++loops;
    auto pt = start;
    do {
      seen.insert(pt);
      auto other = *across(pt);
      seen.insert(other);
      pt = {other.first, t.regions[other.first].tangle().partner(other.second)};
    } while (pt != start);
  }
  const int total = static_cast<int>(points.size());
  SurfaceTangle out;
  const int keep = std::min(plus.region, minus.region);
  for (int r = 0; r < s.region_count(); ++r) {
    if (r == keep) out.regions.emplace_back(PlanarTangle(total, 0, matching, loops), partition);
    else if (r != plus.region && r != minus.region) out.regions.push_back(t.regions[r]);
  }
  return out;
}

Coarsening coarsen(const HomComplex& fine, int seam, int qmin, int qmax) {
  const Network& net = fine.network();
  if (seam < 0 || seam >= static_cast<int>(net.families.size())) throw SpecError("no such seam");
  merged_layout(fine.surface(), seam);
  const auto& left = fine.left_slot(seam);
  const auto& right = fine.right_slot(seam);
  const int n = static_cast<int>(left.size());

  Coarsening out;
  out.target.vertex_count = net.vertex_count;
  out.target.fixed = net.fixed;
  for (int p = 0; p < n; ++p) out.target.fixed.push_back({left[p], right[p]});
  for (int f = 0; f < static_cast<int>(net.families.size()); ++f)
    if (f != seam) out.target.families.push_back(net.families[f]);
  out.target.offset_quarters = net.offset_quarters - 2 * n;

  out.source_complex = fine.assemble(qmin, qmax);
  out.target_complex = assemble(out.target, qmin, qmax);
  const int base = family_arc_base(net)[seam];
  const auto& bar = fine.bar(seam);
  std::vector<int> identity_map(net.vertex_count);
  std::iota(identity_map.begin(), identity_map.end(), 0);

  for (const auto& [k, gens] : out.source_complex.generators) {
    auto tg = out.target_complex.generators.find(k);
    const int rows = tg == out.target_complex.generators.end() ? 0 : static_cast<int>(tg->second.size());
    SparseMatrix m(rows, static_cast<int>(gens.size()));
    for (int col = 0; col < static_cast<int>(gens.size()); ++col) {
      const auto& g = gens[col];
      const auto& w = bar.words[g.objects[seam]];
      if (w.length() != 0) continue;
      const PlanarTangle& a = fine.ring(seam).object(w.objects[0]);
      StateVector cur = generator_state(fine, g);
      std::vector<Arc> arcs = cur.arcs();
      const auto ch = chords(a);
      const int h = static_cast<int>(ch.size());
      for (int c = 0; c < h; ++c) {
        const auto [p, q] = ch[c];
        arcs[base + c] = {left[p], right[p]};
        arcs[base + h + c] = {left[q], right[q]};
        cur = rewire(cur, arcs);
      }
      NetworkGenerator t{g.objects, 0};
      t.objects.erase(t.objects.begin() + seam);
      StateVector moved = transport_by_vertex(cur, network_arcs(out.target, t.objects), identity_map);
      for (const auto& [l, c] : moved.terms()) {
        t.labeling = l;
        const int row = out.target_complex.find(k, t);
        if (row < 0) throw std::logic_error("coarsen: image outside the target window");
        m.add(row, col, c);
      }
    }
    out.map.components.emplace(k, std::move(m));
  }
  check_chain_map(out.source_complex.complex, out.target_complex.complex, out.map);
  return out;
}

int h0(const Surface& s, const SurfaceTangle& t, const SurfaceTangle& u, int q) {
  HomComplex c(s, t, u, 1);
  auto a = c.assemble(q, q);
  return smith_homology(a.complex, Window{0, 0, q, q}).at(0, q).betti;
}

BigradedHomology symmetrized_pairing(const Surface& s, const SurfaceTangle& x, const SurfaceTangle& y,
                                     const Window& w, int depth) {
  HomComplex c(s, x, y, depth, {}, w.hmin);
  return hom_homology(c, w);
}

SurfaceSpec rotate_region(const SurfaceSpec& s, int region, int k) {
  SurfaceSpec out = s;
  auto& segs = out.regions.at(region);
  if (!segs.empty()) std::rotate(segs.begin(), segs.begin() + (k % static_cast<int>(segs.size())), segs.end());
  return out;
}

CapTangle rotate_blocks(const CapTangle& t, int k) {
  const int nb = static_cast<int>(t.partition().size());
  if (nb == 0) return t;
  k %= nb;
  const int start = t.block_start(k);
  const int n = t.tangle().size();
  std::vector<int> matching(n);
  auto moved = [&](int p) { return ((p - start) % n + n) % n; };
  for (int p = 0; p < n; ++p) matching[moved(p)] = moved(t.tangle().partner(p));
  std::vector<int> partition(t.partition());
  std::rotate(partition.begin(), partition.begin() + k, partition.end());
  return CapTangle(PlanarTangle(n, 0, matching, t.tangle().free_circles()), partition);
}

Surface standard_annulus() {
  return validate_surface({{{"b0", 1}, {"b1", 1}},
                           {"g"},
                           {{Segment::seam("g", -1), Segment::arc("b1"), Segment::seam("g", 1), Segment::arc("b0")}}});
}

SurfaceTangle essential_circle() { return {{CapTangle(PlanarTangle::nested_caps(1), {1, 0, 1, 0})}}; }

}  // namespace skeinhom
