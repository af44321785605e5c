#include <bit>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "skeinhom/errors.hpp"
#include "skeinhom/tqft.hpp"

using namespace skeinhom;

namespace {

// k circles, circle i made of two arcs on vertices 2i, 2i+1.
std::vector<Arc> circles(int k) {
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) {
    arcs.push_back({2 * i, 2 * i + 1});
    arcs.push_back({2 * i, 2 * i + 1});
  }
  return arcs;
}

StateVector basis_state(int k, Labeling l) {
  StateVector s(circles(k));
  s.add(l, 1);
  return s;
}

// Coefficient keyed by the number of x labels; the outputs compared here are symmetric.
std::map<int, std::int64_t> by_popcount(const StateVector& s) {
  std::map<int, std::int64_t> out;
  for (const auto& [l, c] : s.terms()) out[std::popcount(l)] += c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::vector<PlanarTangle> small_objects(int m, int n) { return enumerate_minimal_tangles(m, n); }

}  // namespace

TEST_CASE("graded rank of k circles is (q^-1 + q)^k", "[tqft]") {
  const auto circle = LaurentPoly::monomial(-1) + LaurentPoly::monomial(1);
  for (int k = 0; k <= 6; ++k) {
    auto m = kh_eval(trace_circles(circles(k)), 0);
    CHECK(m.graded_rank() == circle.pow(k));
  }
  CHECK(kh_eval(trace_circles(circles(0)), 0).graded_rank() == LaurentPoly(1));
  CHECK(kh_eval(trace_circles(circles(3)), 2).graded_rank() == circle.pow(3).shifted(2));
  CHECK(integral_offset(8) == 2);
  CHECK_THROWS_AS(integral_offset(6), GradingError);
}

TEST_CASE("merge and split follow the Frobenius structure", "[tqft]") {
  // Circle 0 labeled 1, circle 1 labeled x.
  auto merged = surgery(basis_state(2, 0b10), 0, 2);
  REQUIRE(merged.circle_count() == 1);
  CHECK(merged.terms() == std::map<Labeling, std::int64_t>{{1, 1}});
  CHECK(surgery(basis_state(2, 0b11), 0, 2).is_zero());
  CHECK(surgery(basis_state(2, 0b00), 0, 2).terms() == std::map<Labeling, std::int64_t>{{0, 1}});
  auto split = surgery(basis_state(1, 0), 0, 1);
  REQUIRE(split.circle_count() == 2);
  CHECK(split.terms() == std::map<Labeling, std::int64_t>{{0b01, 1}, {0b10, 1}});
  auto split_x = surgery(basis_state(1, 1), 0, 1);
  CHECK(split_x.terms() == std::map<Labeling, std::int64_t>{{0b11, 1}});
  CHECK_THROWS_AS(surgery(basis_state(1, 0), 0, 7), InvalidSite);
}

TEST_CASE("Frobenius axioms hold on all basis inputs", "[tqft]") {
  for (Labeling l = 0; l < 8; ++l) {
    // m(m(a,b),c) = m(a,m(b,c)); arcs 0,2,4 lie on circles 0,1,2.
    auto left = surgery(surgery(basis_state(3, l), 0, 2), 0, 4);
    auto right = surgery(surgery(basis_state(3, l), 2, 4), 0, 2);
    CHECK(left.terms() == right.terms());
  }
  for (Labeling l = 0; l < 2; ++l) {
    // (D x id) D = (id x D) D, compared up to the symmetry of the output.
    auto d1 = surgery(basis_state(1, l), 0, 1);
    // Re-seat the split on circles with two arcs each so either one can split again.
    StateVector two(std::vector<Arc>{{0, 2}, {0, 2}, {1, 3}, {1, 3}});
    for (const auto& [lab, c] : d1.terms()) two.add(lab, c);
    CHECK(by_popcount(surgery(two, 0, 1)) == by_popcount(surgery(two, 2, 3)));
  }
  for (Labeling l = 0; l < 4; ++l) {
    // D m = (m x id)(id x D) on two circles.
    auto dm = surgery(surgery(basis_state(2, l), 0, 2), 0, 1);
    auto other = surgery(surgery(basis_state(2, l), 2, 3), 0, 2);
    CHECK(by_popcount(dm) == by_popcount(other));
  }
}

TEST_CASE("dots and the two-dot relation", "[tqft]") {
  CHECK(add_dot(basis_state(1, 0), 0).terms() == std::map<Labeling, std::int64_t>{{1, 1}});
  CHECK(add_dot(add_dot(basis_state(1, 0), 0), 0).is_zero());
  CHECK(add_dot(basis_state(2, 0b01), 1).terms() == std::map<Labeling, std::int64_t>{{0b11, 1}});
  for (Labeling l = 0; l < 8; ++l)
    for (int c = 0; c < 3; ++c) CHECK(add_dot(add_dot(basis_state(3, l), c), c).is_zero());
}

TEST_CASE("surgery raises and dots raise Kh degree by fixed amounts", "[tqft]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 4;
    StateVector s(circles(k));
    std::uniform_int_distribution<Labeling> lab(0, (Labeling(1) << k) - 1);
    s.add(lab(rng), 1 + trial % 3);
    std::uniform_int_distribution<int> arc(0, 2 * k - 1);
    int i = arc(rng), j = arc(rng);
    if (i == j) continue;
    const int before = s.kh_degree(s.terms().begin()->first);
    auto t = surgery(s, i, j);
    for (const auto& [l, c] : t.terms()) CHECK(t.kh_degree(l) == before + 1);
    auto d = add_dot(s, s.diagram().component_of[0]);
    for (const auto& [l, c] : d.terms()) CHECK(d.kh_degree(l) == before + 2);
  }
}

TEST_CASE("hom spaces have the closure dimensions", "[tqft]") {
  const auto id1 = PlanarTangle::identity(1);
  const auto id2 = PlanarTangle::identity(2);
  const auto cap = PlanarTangle::nested_caps(1);
  const auto one_plus_q2 = LaurentPoly(1) + LaurentPoly::monomial(2);
  CHECK(hom_space(id1, id1).graded_rank() == one_plus_q2);
  CHECK(hom_space(cap, cap).graded_rank() == one_plus_q2);
  CHECK(hom_space(id2, id2).graded_rank() == one_plus_q2 * one_plus_q2);
  CHECK(hom_degree(hom_unit(id2), 0) == 0);
  CHECK_THROWS_AS(hom_space(id1, id2), InvalidBoundary);
}

TEST_CASE("pairing is unital and associative on small rings", "[tqft]") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 0}, {0, 2}, {2, 2}, {3, 1}, {1, 3}, {4, 0}}) {
    auto objs = small_objects(m, n);
    auto basis = [&](const PlanarTangle& a, const PlanarTangle& b) {
      std::vector<HomElement> out;
      const int k = hom_space(a, b).size();
      for (int l = 0; l < k; ++l) out.push_back(hom_basis_element(a, b, l));
      return out;
    };
    for (const auto& a : objs)
      for (const auto& b : objs) {
        for (const auto& f : basis(a, b)) {
          CHECK(pair_hom_elements(hom_unit(a), f) == f);
          CHECK(pair_hom_elements(f, hom_unit(b)) == f);
          CHECK(pair_hom_elements(f, hom_zero(b, a)).state.is_zero());
        }
        for (const auto& c : objs)
          for (const auto& d : objs)
            for (const auto& f : basis(a, b))
              for (const auto& g : basis(b, c))
                for (const auto& h : basis(c, d)) {
                  auto left = pair_hom_elements(pair_hom_elements(f, g), h);
                  auto right = pair_hom_elements(f, pair_hom_elements(g, h));
                  CHECK(left == right);
                }
      }
  }
}

TEST_CASE("pairing is graded and the saddle square is two single dots", "[tqft]") {
  const auto id2 = PlanarTangle::identity(2);
  const auto e = PlanarTangle::parse("[1,0,3,2]", 2, 2);
  auto down = hom_basis_element(e, id2, 0);
  auto up = hom_basis_element(id2, e, 0);
  CHECK(hom_degree(down, 0) == 1);
  auto sq = pair_hom_elements(down, up);
  // e against e: circle 0 holds the bottom chords, circle 1 the top chords.
  CHECK(sq.state.terms() == std::map<Labeling, std::int64_t>{{0b01, 1}, {0b10, 1}});
  for (const auto& [l, c] : sq.state.terms()) CHECK(hom_degree(sq, l) == 2);
}

TEST_CASE("state JSON", "[tqft]") {
  auto s = surgery(basis_state(1, 0), 0, 1);
  CHECK(s.to_json() == "{\"x1\": 1, \"1x\": 1}");
  CHECK(labeling_string(0b101, 3) == "x1x");
}
