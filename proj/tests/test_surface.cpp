#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "skeinhom/errors.hpp"
#include "skeinhom/surface.hpp"

using namespace skeinhom;

namespace {

Surface annulus() {
  return validate_surface({{{"b0", 1}, {"b1", 1}},
                           {"g"},
                           {{Segment::seam("g", -1), Segment::arc("b1"), Segment::seam("g", 1), Segment::arc("b0")}}});
}

// Two rectangles glued into a ring along g1 and g2.
Surface annulus2() {
  return validate_surface(
      {{{"a0", 1}, {"a1", 1}, {"c0", 1}, {"c1", 1}},
       {"g1", "g2"},
       {{Segment::seam("g1", -1), Segment::arc("a1"), Segment::seam("g2", 1), Segment::arc("a0")},
        {Segment::seam("g2", -1), Segment::arc("c1"), Segment::seam("g1", 1), Segment::arc("c0")}}});
}

Surface disk() { return validate_surface({{{"a", 1}, {"b", 1}}, {}, {{Segment::arc("a"), Segment::arc("b")}}}); }

Surface cut_disk() {
  return validate_surface({{{"a", 1}, {"b", 1}},
                           {"g"},
                           {{Segment::arc("a"), Segment::seam("g", 1)}, {Segment::seam("g", -1), Segment::arc("b")}}});
}

CapTangle chord(std::vector<int> partition) { return CapTangle(PlanarTangle::nested_caps(1), std::move(partition)); }
CapTangle empty(int blocks) { return CapTangle(PlanarTangle(0, 0, {}), std::vector<int>(blocks, 0)); }

SurfaceTangle circle1() { return {{chord({1, 0, 1, 0})}}; }
SurfaceTangle circle2() { return {{chord({1, 0, 1, 0}), chord({1, 0, 1, 0})}}; }
SurfaceTangle arc_tangle() { return {{chord({1, 1})}}; }
SurfaceTangle cut_arc() { return {{chord({1, 1}), chord({1, 1})}}; }

using Table = std::map<std::pair<int, int>, HomologyCell>;

Table essential_table() {
  return {{{0, 0}, {1, {}}},  {{0, 2}, {1, {}}},  {{-1, 2}, {1, {}}},
          {{-1, 4}, {0, {2}}}, {{-2, 6}, {1, {}}}, {{-3, 6}, {1, {}}}};
}

std::map<std::pair<int, int>, int> bettis(const BigradedHomology& h) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& [ij, c] : h.cells)
    if (c.betti) out[ij] = c.betti;
  return out;
}

// Bar complex with every basis letter allowed, identities included.
SlotFamily unreduced_bar(const SmallRing& ring, int depth, std::vector<std::vector<int>> slots) {
  std::vector<BarWord> words;
  std::vector<BarWord> layer;
  for (int a = 0; a < ring.size(); ++a) layer.push_back({{a}, {}});
  for (int r = 0; r <= depth; ++r) {
    words.insert(words.end(), layer.begin(), layer.end());
    std::vector<BarWord> next;
    for (const auto& w : layer)
      for (int b = 0; b < ring.size(); ++b)
        for (Labeling l = 0; l < Labeling(ring.hom_dim(w.objects.back(), b)); ++l) {
          BarWord v = w;
          v.objects.push_back(b);
          v.letters.push_back(l);
          next.push_back(v);
        }
    layer = std::move(next);
  }
  SlotFamily f;
  f.slots = std::move(slots);
  f.complete_depth = depth;
  f.bound = {0, 0};
  std::map<BarWord, int> index;
  for (const auto& w : words) {
    index[w] = static_cast<int>(f.objects.size());
    f.objects.push_back({-w.length(), word_degree(ring, w),
                         {ring.object(w.objects.front()), ring.object(w.objects.back())}, word_label(ring, w)});
  }
  for (const auto& w : words) {
    const int r = w.length();
    if (r == 0) continue;
    const int from = index.at(w);
    BarWord tail{{w.objects.begin() + 1, w.objects.end()}, {w.letters.begin() + 1, w.letters.end()}};
    f.arrows.push_back({from, index.at(tail), 1, {ring.element(w.objects[0], w.objects[1], w.letters[0]), std::nullopt}});
    for (int i = 1; i < r; ++i) {
      const auto& p = ring.product(w.objects[i - 1], w.objects[i], w.objects[i + 1], w.letters[i - 1], w.letters[i]);
      for (const auto& [l, c] : p.terms()) {
        BarWord v = w;
        v.objects.erase(v.objects.begin() + i);
        v.letters.erase(v.letters.begin() + i - 1, v.letters.begin() + i + 1);
        v.letters.insert(v.letters.begin() + i - 1, l);
        f.arrows.push_back({from, index.at(v), (i % 2 ? -1 : 1) * c, {std::nullopt, std::nullopt}});
      }
    }
    BarWord head{{w.objects.begin(), w.objects.end() - 1}, {w.letters.begin(), w.letters.end() - 1}};
    const auto last = ring.element(w.objects[r - 1], w.objects[r], w.letters[r - 1]);
    f.arrows.push_back({from, index.at(head), r % 2 ? -1 : 1, {std::nullopt, swap_ends(last)}});
  }
  return f;
}

// Same layout, every seam family replaced by its unreduced counterpart.
TruncatedComplex unreduced_complex(const HomComplex& c, int depth, int qmin, int qmax) {
  Network net = c.network();
  for (int g = 0; g < static_cast<int>(net.families.size()); ++g)
    net.families[g] = unreduced_bar(c.ring(g), depth, net.families[g].slots);
  return assemble(net, qmin, qmax).complex;
}

SurfaceElement single(const NetworkGenerator& g) { return {{g, 1}}; }

SurfaceElement add(SurfaceElement a, const SurfaceElement& b, std::int64_t s = 1) {
  for (const auto& [g, c] : b) a[g] += s * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

}  // namespace

TEST_CASE("surface specs are validated", "[surface]") {
  CHECK(annulus().region_count() == 1);
  CHECK(annulus().seam_count() == 1);
  CHECK_NOTHROW(validate_surface({{{"a", 1}, {"b", 1}, {"c", -1}}, {}, {{Segment::arc("a"), Segment::arc("b"), Segment::arc("c")}}}));
  CHECK_THROWS_AS(validate_surface({{}, {"g"}, {{Segment::seam("g", 1), Segment::seam("g", 1)}}}), SpecError);
  CHECK_THROWS_AS(validate_surface({{}, {"g"}, {{Segment::seam("g", 1)}}}), SpecError);
  CHECK_THROWS_AS(validate_surface({{{"a", 1}, {"a", 1}}, {}, {{Segment::arc("a")}}}), SpecError);
  CHECK_THROWS_AS(validate_surface({{{"a", 1}}, {}, {{Segment::arc("a"), Segment::arc("a")}}}), SpecError);
  CHECK_THROWS_AS(validate_surface({{{"a", 1}, {"b", 1}}, {}, {{Segment::arc("a")}, {Segment::arc("b")}}}), SpecError);
  CHECK_THROWS_AS(validate_surface({{{"a", 1}}, {}, {{Segment::arc("z")}}}), SpecError);
  try {
    validate_surface({{}, {"g"}, {{Segment::seam("g", 1), Segment::seam("g", 1)}}});
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("region 0, segment 1") != std::string::npos);
    CHECK(e.code() == "spec");
  }
  CHECK_THROWS_AS(HomComplex(annulus(), {{chord({1, 0, 0, 1})}}, circle1(), 2), InvalidBoundary);
}

TEST_CASE("empty tangles on the annulus give the unit complex", "[surface]") {
  const SurfaceTangle e{{empty(4)}};
  HomComplex c(annulus(), e, e, 4);
  auto h = hom_homology(c, {-3, 0, -4, 6});
  CHECK(h.cells == Table{{{0, 0}, {1, {}}}});
  CHECK(h0(annulus(), e, e, 0) == 1);
  auto unit = identity_unit(c);
  CHECK(element_differential(c, unit).empty());
  CHECK(compose(c, unit, c, unit, c) == unit);
}

TEST_CASE("disk arc endomorphisms are 1 + q^2", "[surface]") {
  HomComplex c(disk(), arc_tangle(), arc_tangle(), 0);
  auto h = hom_homology(c, {-2, 0, -2, 6});
  // Oracle: Kh of the closed circle with the Hom shift.
  const auto rank = hom_space(PlanarTangle::nested_caps(1), PlanarTangle::nested_caps(1)).graded_rank();
  Table want;
  for (const auto& [e, coef] : rank.terms()) want[{0, e}] = {static_cast<int>(coef), {}};
  CHECK(h.cells == want);
  std::vector<int> ranks;
  for (int q = 0; q <= 6; ++q) ranks.push_back(h0(disk(), arc_tangle(), arc_tangle(), q));
  CHECK(ranks == std::vector<int>{1, 0, 1, 0, 0, 0, 0});
  CHECK(h0(cut_disk(), cut_arc(), cut_arc(), 0) == 1);
  CHECK(h0(cut_disk(), cut_arc(), cut_arc(), 2) == 1);
  CHECK(h0(cut_disk(), cut_arc(), cut_arc(), 4) == 0);
  auto p = symmetrized_pairing(disk(), arc_tangle(), arc_tangle(), {-2, 0, 0, 4});
  CHECK(p.cells == Table{{{0, 0}, {1, {}}}, {{0, 2}, {1, {}}}});
}

TEST_CASE("essential circle endomorphisms on the annulus", "[surface]") {
  const Window w{-3, 0, 0, 6};
  HomComplex c(annulus(), circle1(), circle1(), -1, {}, w.hmin);
  CHECK(c.depth() == 4);
  auto h = hom_homology(c, w);
  CHECK(h.cells == essential_table());
  // Two more levels of bar words change nothing on the window.
  HomComplex deeper(annulus(), circle1(), circle1(), c.depth() + 2);
  CHECK(hom_homology(deeper, w) == h);
  // Unreduced bar oracle, rational ranks.
  auto u = unreduced_complex(c, c.depth() + 2, w.qmin, w.qmax);
  CHECK(oracle::betti_by_rank(u, w.hmin, w.hmax, w.qmin, w.qmax) == bettis(h));
  CHECK(euler_series(h) == LaurentPoly(1));
  for (int q = 0; q <= 6; ++q) {
    auto uh0 = oracle::betti_by_rank(unreduced_complex(HomComplex(annulus(), circle1(), circle1(), 1), 3, q, q), 0, 0, q, q);
    const int want = uh0.count({0, q}) ? uh0.at({0, q}) : 0;
    CHECK(h0(annulus(), circle1(), circle1(), q) == want);
  }
}

TEST_CASE("homology ignores region rotation and order", "[surface]") {
  const Window w{-2, 0, 0, 4};
  auto base = hom_homology(HomComplex(annulus(), circle1(), circle1(), 3), w);
  for (int k = 1; k < 4; ++k) {
    Surface r = validate_surface(rotate_region(annulus().spec, 0, k));
    SurfaceTangle t{{rotate_blocks(circle1().regions[0], k)}};
    CHECK(hom_homology(HomComplex(r, t, t, 3), w) == base);
  }
  auto two = hom_homology(HomComplex(annulus2(), circle2(), circle2(), 3), w);
  SurfaceSpec swapped = annulus2().spec;
  std::swap(swapped.regions[0], swapped.regions[1]);
  std::swap(swapped.seams[0], swapped.seams[1]);
  CHECK(hom_homology(HomComplex(validate_surface(swapped), circle2(), circle2(), 3), w) == two);
  CHECK(two == base);
}

TEST_CASE("coarsening two seams to one is a quasi-isomorphism", "[surface]") {
  const Window w{-2, 0, 0, 4};
  HomComplex fine(annulus2(), circle2(), circle2(), 3);
  for (int seam = 0; seam < 2; ++seam) {
    auto co = coarsen(fine, seam, w.qmin, w.qmax);
    auto hs = smith_homology(co.source_complex.complex, w);
    auto ht = smith_homology(co.target_complex.complex, w);
    CHECK(hs == ht);
    auto cone_h = smith_homology(cone(co.source_complex.complex, co.target_complex.complex, co.map), {-1, 0, 0, 4});
    CHECK(cone_h.is_zero());
    // The closed-up layout agrees with the merged surface.
    Surface merged = remove_seam(fine.surface(), seam);
    SurfaceTangle mt = merge_tangle(fine.surface(), circle2(), seam);
    CHECK(merged.region_count() == 1);
    CHECK(hom_homology(HomComplex(merged, mt, mt, 3), w) == ht);
  }
  CHECK_THROWS_AS(remove_seam(annulus(), 0), SpecError);
  HomComplex one(annulus(), circle1(), circle1(), 3);
  CHECK_THROWS_AS(coarsen(one, 0, 0, 4), SpecError);
}

TEST_CASE("coarsening the cut disk recovers the arc", "[surface]") {
  const Window w{-2, 0, 0, 4};
  HomComplex fine(cut_disk(), cut_arc(), cut_arc(), 3);
  auto co = coarsen(fine, 0, w.qmin, w.qmax);
  auto ht = smith_homology(co.target_complex.complex, w);
  CHECK(ht.cells == Table{{{0, 0}, {1, {}}}, {{0, 2}, {1, {}}}});
  CHECK(smith_homology(co.source_complex.complex, w) == ht);
  CHECK(smith_homology(cone(co.source_complex.complex, co.target_complex.complex, co.map), {-1, 0, 0, 4}).is_zero());
  // Surjective on H^0: the images of the closed degree-0 generators span.
  const auto& m = co.map.components.at(0);
  std::vector<std::vector<std::int64_t>> dense(m.rows(), std::vector<std::int64_t>(m.cols(), 0));
  for (const auto& e : m.entries()) dense[e.row][e.col] += e.value;
  CHECK(smith_invariants(dense) == std::vector<std::int64_t>(m.rows(), 1));
  SurfaceTangle mt = merge_tangle(cut_disk(), cut_arc(), 0);
  CHECK(mt.regions[0].tangle() == PlanarTangle::nested_caps(1));
  CHECK(mt.regions[0].partition() == std::vector<int>{1, 1});
}

TEST_CASE("composition is unital, associative and Leibniz on the annulus", "[surface]") {
  const int depth = 3;
  HomComplex c(annulus(), circle1(), circle1(), depth);
  const auto& all = c.full();
  std::vector<NetworkGenerator> gens;
  for (const auto& [k, g] : all.generators) gens.insert(gens.end(), g.begin(), g.end());
  REQUIRE(gens.size() == 8);
  const auto unit = identity_unit(c);
  CHECK(element_differential(c, unit).empty());
  CHECK(compose(c, unit, c, unit, c) == unit);
  for (const auto& g : gens) {
    CHECK(compose(c, unit, c, single(g), c) == single(g));
    CHECK(compose(c, single(g), c, unit, c) == single(g));
  }
  int triples = 0;
  for (const auto& x : gens)
    for (const auto& y : gens)
      for (const auto& z : gens) {
        if (-(c.degree(x) + c.degree(y) + c.degree(z)) > depth) continue;
        auto left = compose(c, compose(c, single(x), c, single(y), c), c, single(z), c);
        auto right = compose(c, single(x), c, compose(c, single(y), c, single(z), c), c);
        CHECK(left == right);
        ++triples;
      }
  CHECK(triples > 0);
  for (const auto& x : gens)
    for (const auto& y : gens) {
      if (-(c.degree(x) + c.degree(y)) > depth) continue;
      auto xy = compose(c, single(x), c, single(y), c);
      for (const auto& [g, coef] : xy) {
        CHECK(c.degree(g) == c.degree(x) + c.degree(y));
        CHECK(c.q_degree(g) == c.q_degree(x) + c.q_degree(y));
      }
      const std::int64_t s = c.degree(x) % 2 == 0 ? 1 : -1;
      auto lhs = element_differential(c, xy);
      auto rhs = add(compose(c, element_differential(c, single(x)), c, single(y), c),
                     compose(c, single(x), c, element_differential(c, single(y)), c), s);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("degree-0 products follow the surgery oracle", "[surface]") {
  HomComplex c(annulus(), circle1(), circle1(), 2);
  auto zero = basis(c, 0, 0), two = basis(c, 0, 2);
  REQUIRE(zero.size() == 1);
  REQUIRE(two.size() == 1);
  // Two circles labeled (a, b) merge by multiplication in k[x]/x^2.
  for (Labeling la : {0, 1})
    for (Labeling lb : {0, 1}) {
      StateVector s(std::vector<Arc>{{0, 1}, {0, 1}, {2, 3}, {2, 3}});
      s.add(la | lb << 1, 1);
      auto merged = surgery(s, 0, 2);
      SurfaceElement want;
      for (const auto& [l, coef] : merged.terms()) want[l ? two[0] : zero[0]] += coef;
      auto x = la ? two[0] : zero[0];
      auto y = lb ? two[0] : zero[0];
      CHECK(compose(c, single(x), c, single(y), c) == want);
    }
}

TEST_CASE("two-seam composition and the pairing symmetry", "[surface]") {
  HomComplex c(annulus2(), circle2(), circle2(), 2);
  const auto unit = identity_unit(c);
  CHECK(element_differential(c, unit).empty());
  std::vector<NetworkGenerator> gens;
  for (const auto& [k, g] : c.full().generators)
    if (k >= -1) gens.insert(gens.end(), g.begin(), g.end());
  for (const auto& g : gens) {
    CHECK(compose(c, unit, c, single(g), c) == single(g));
    CHECK(compose(c, single(g), c, unit, c) == single(g));
  }
  for (const auto& x : gens)
    for (const auto& y : gens) {
      if (-(c.degree(x) + c.degree(y)) > 2) continue;
      auto xy = compose(c, single(x), c, single(y), c);
      const std::int64_t s = c.degree(x) % 2 == 0 ? 1 : -1;
      auto rhs = add(compose(c, element_differential(c, single(x)), c, single(y), c),
                     compose(c, single(x), c, element_differential(c, single(y)), c), s);
      CHECK(element_differential(c, xy) == rhs);
    }

  // Annular tangles meeting the seam n times, no boundary points.
  std::vector<SurfaceTangle> pool;
  for (int n = 0; n <= 2; ++n)
    for (const auto& t : enumerate_cap_tangles(2 * n)) pool.push_back({{CapTangle(t, {n, 0, n, 0})}});
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const Window w{-2, 0, -2, 4};
  int tried = 0;
  while (tried < 8) {
    const auto& x = pool[pick(rng)];
    const auto& y = pool[pick(rng)];
    if ((x.regions[0].partition()[0] + y.regions[0].partition()[0]) % 2) continue;
    auto pxy = poincare_series(symmetrized_pairing(annulus(), x, y, w));
    auto pyx = poincare_series(symmetrized_pairing(annulus(), y, x, w));
    CHECK(pxy.coefficients == pyx.coefficients);
    ++tried;
  }
  const SurfaceTangle e{{empty(4)}};
  CHECK(symmetrized_pairing(annulus(), e, e, w).cells == Table{{{0, 0}, {1, {}}}});
}
