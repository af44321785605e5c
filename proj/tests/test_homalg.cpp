#include <algorithm>
#include <numeric>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "skeinhom/errors.hpp"
#include "skeinhom/homalg.hpp"
#include "skeinhom/parallel.hpp"

using namespace skeinhom;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

SparseMatrix sparse(const Dense& m, int cols) {
  SparseMatrix s(static_cast<int>(m.size()), cols);
  for (int r = 0; r < static_cast<int>(m.size()); ++r)
    for (int c = 0; c < cols; ++c)
      if (m[r][c] != 0) s.add(r, c, m[r][c]);
  s.normalize();
  return s;
}

Dense to_dense(const SparseMatrix& s) {
  Dense m(s.rows(), std::vector<std::int64_t>(s.cols(), 0));
  for (const auto& e : s.entries()) m[e.row][e.col] += e.value;
  return m;
}

Dense multiply(const Dense& a, const Dense& b, int inner, int cols) {
  Dense out(a.size(), std::vector<std::int64_t>(cols, 0));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (int k = 0; k < inner; ++k)
      if (a[r][k] != 0)
        for (int c = 0; c < cols; ++c) out[r][c] += a[r][k] * b[k][c];
  return out;
}

// Unimodular matrix and its inverse from a few elementary row operations.
std::pair<Dense, Dense> random_unimodular(std::mt19937& rng, int n) {
  Dense u(n, std::vector<std::int64_t>(n, 0)), v = u;
  for (int i = 0; i < n; ++i) u[i][i] = v[i][i] = 1;
  if (n < 2) return {u, v};
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-1, 1);
  for (int step = 0; step < 3; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int c = coef(rng);
    // u <- (I + c E_ij) u, v <- v (I - c E_ij)
    for (int k = 0; k < n; ++k) u[i][k] += c * u[j][k];
    for (int k = 0; k < n; ++k) v[k][j] -= c * v[k][i];
  }
  return {u, v};
}

struct Piece {
  int degree;   // generator in `degree`, or source of a map into degree+1
  int factor;   // 0: lone generator, k: Z --k--> Z
};

// Direct sum of elementary complexes, disguised by unimodular changes of basis.
TruncatedComplex random_complex(std::mt19937& rng, std::vector<Piece>& pieces) {
  std::uniform_int_distribution<int> count(1, 5), deg(-3, 0), fac(0, 4);
  pieces.clear();
  const int n = count(rng);
  for (int i = 0; i < n; ++i) pieces.push_back({deg(rng), fac(rng)});
  std::map<int, int> dim;
  std::map<int, std::vector<std::pair<int, int>>> maps;  // degree -> (src idx, dst idx, factor) via piece
  struct Link {
    int src, dst, k;
  };
  std::map<int, std::vector<Link>> links;
  for (const auto& p : pieces) {
    if (p.factor == 0) {
      ++dim[p.degree];
      continue;
    }
    const int s = dim[p.degree]++;
    const int t = dim[p.degree + 1]++;
    links[p.degree].push_back({s, t, p.factor});
  }
  TruncatedComplex c;
  std::map<int, std::pair<Dense, Dense>> basis;
  for (int i = -3; i <= 1; ++i) {
    GradedBasisModule g;
    for (int k = 0; k < dim[i]; ++k) g.add({i, 0});
    c.set_group(i, g);
    basis[i] = random_unimodular(rng, dim[i]);
  }
  for (int i = -3; i <= 0; ++i) {
    Dense d(dim[i + 1], std::vector<std::int64_t>(dim[i], 0));
    for (const auto& l : links[i]) d[l.dst][l.src] = l.k;
    // d' = U_{i+1} d V_i
    auto conj = multiply(multiply(basis[i + 1].first, d, dim[i + 1], dim[i]), basis[i].second, dim[i], dim[i]);
    c.set_differential(i, sparse(conj, dim[i]));
  }
  return c;
}

TruncatedComplex single_map(std::int64_t k) {
  TruncatedComplex c;
  GradedBasisModule a, b;
  a.add({-1, 0});
  b.add({0, 0});
  c.set_group(-1, a);
  c.set_group(0, b);
  SparseMatrix d(1, 1);
  d.add(0, 0, k);
  c.set_differential(-1, d);
  return c;
}

ChainMap identity_map(const TruncatedComplex& c) {
  ChainMap f;
  for (int i : c.degrees()) {
    SparseMatrix m(c.group(i).size(), c.group(i).size());
    for (int k = 0; k < c.group(i).size(); ++k) m.add(k, k, 1);
    f.components[i] = m;
  }
  return f;
}

}  // namespace

TEST_CASE("Smith invariants of small matrices", "[homalg]") {
  CHECK(smith_invariants({{2, 4}, {6, 8}}) == std::vector<std::int64_t>{2, 4});
  CHECK(smith_invariants({{0, 0}, {0, 0}}).empty());
  CHECK(smith_invariants({{6}}) == std::vector<std::int64_t>{6});
  CHECK(smith_invariants({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(smith_invariants({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("multiplication by two has torsion cokernel", "[homalg]") {
  auto c = single_map(2);
  auto h = smith_homology(c, Window{-1, 0, 0, 0});
  CHECK(h.at(-1, 0) == HomologyCell{});
  CHECK(h.at(0, 0) == HomologyCell{0, {2}});
  auto iso = smith_homology(single_map(-1), Window{-1, 0, 0, 0});
  CHECK(iso.is_zero());
}

TEST_CASE("random complexes: Betti numbers agree with dense ranks", "[homalg]") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Piece> pieces;
    auto c = random_complex(rng, pieces);
    REQUIRE_NOTHROW(c.check_d_squared());
    Window w{-3, 0, 0, 0};
    auto h = smith_homology(c, w);
    auto ranks = oracle::betti_by_rank(c, -3, 0, 0, 0);
    for (int i = -3; i <= 0; ++i) {
      const auto it = ranks.find({i, 0});
      CHECK(h.at(i, 0).betti == (it == ranks.end() ? 0 : it->second));
    }
    // Torsion orders multiply to the product of the nontrivial factors landing in each degree.
    std::map<int, std::int64_t> expected_order;
    for (const auto& p : pieces)
      if (p.factor > 1 && p.degree + 1 <= 0) expected_order[p.degree + 1] = (expected_order.count(p.degree + 1) ? expected_order[p.degree + 1] : 1) * p.factor;
    for (int i = -2; i <= 0; ++i) {
      const auto& t = h.at(i, 0).torsion;
      const std::int64_t order = std::accumulate(t.begin(), t.end(), std::int64_t{1}, std::multiplies<>());
      CHECK(order == (expected_order.count(i) ? expected_order[i] : 1));
    }
  }
}

TEST_CASE("homology ignores generator order", "[homalg]") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Piece> pieces;
    auto c = random_complex(rng, pieces);
    // Reverse every basis.
    TruncatedComplex r;
    for (int i : c.degrees()) {
      GradedBasisModule g;
      for (int k = c.group(i).size() - 1; k >= 0; --k) g.add(c.group(i).degree(k));
      r.set_group(i, g);
    }
    for (int i : c.degrees()) {
      const int rows = c.group(i + 1).size(), cols = c.group(i).size();
      SparseMatrix d(rows, cols);
      for (const auto& e : c.differential(i).entries()) d.add(rows - 1 - e.row, cols - 1 - e.col, e.value);
      d.normalize();
      if (rows > 0 && cols > 0) r.set_differential(i, d);
    }
    Window w{-3, 0, 0, 0};
    CHECK(smith_homology(c, w) == smith_homology(r, w));
  }
}

TEST_CASE("tensor product uses the Koszul sign", "[homalg]") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Piece> pa, pb;
    auto a = random_complex(rng, pa);
    auto b = random_complex(rng, pb);
    auto t = tensor(a, b);
    REQUIRE_NOTHROW(t.check_d_squared());
    // Rational Kuenneth.
    auto ha = oracle::betti_by_rank(a, -3, 1, 0, 0);
    auto hb = oracle::betti_by_rank(b, -3, 1, 0, 0);
    auto ht = oracle::betti_by_rank(t, -6, 2, 0, 0);
    std::map<std::pair<int, int>, int> expect;
    for (const auto& [ka, va] : ha)
      for (const auto& [kb, vb] : hb) expect[{ka.first + kb.first, 0}] += va * vb;
    CHECK(ht == expect);
  }
  // Unsigned tensor of (Z -1-> Z) with itself is not a complex; the signed one is.
  auto s = tensor(single_map(1), single_map(1));
  CHECK_NOTHROW(s.check_d_squared());
  CHECK(smith_homology(s, Window{-2, 0, 0, 0}).is_zero());
}

TEST_CASE("cone of the identity is acyclic", "[homalg]") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Piece> pieces;
    auto c = random_complex(rng, pieces);
    auto k = cone(c, c, identity_map(c));
    REQUIRE_NOTHROW(k.check_d_squared());
    CHECK(smith_homology(k, Window{-4, 1, 0, 0}).is_zero());
  }
  // The zero map into (Z -2-> Z) from a lone generator is a chain map; a nonzero one is not.
  TruncatedComplex point;
  GradedBasisModule g;
  g.add({-1, 0});
  point.set_group(-1, g);
  ChainMap f;
  f.components[-1] = SparseMatrix(1, 1);
  CHECK_NOTHROW(check_chain_map(point, single_map(2), f));
  f.components[-1].add(0, 0, 1);
  CHECK_THROWS_AS(check_chain_map(point, single_map(2), f), ChainMapError);
}

TEST_CASE("Euler characteristic of homology equals that of chains", "[homalg]") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Piece> pieces;
    auto c = random_complex(rng, pieces);
    auto h = smith_homology(c, Window{-3, 1, 0, 0});
    CHECK(euler_series(h) == c.euler_of_chains());
  }
}

TEST_CASE("truncated windows need a certificate", "[homalg]") {
  auto c = single_map(3);
  c.set_finite(false);
  c.set_complete_from(-1);
  CHECK_THROWS_AS(smith_homology(c, Window{-1, 0, 0, 0}), TruncationError);
  CHECK_NOTHROW(smith_homology(c, Window{0, 0, 0, 0}));
  c.set_certificate({1, 2});
  CHECK_NOTHROW(smith_homology(c, Window{-1, 0, 0, 2}));
  CHECK_THROWS_AS(smith_homology(c, Window{-1, 0, 0, 3}), TruncationError);
}

TEST_CASE("results do not depend on the thread count", "[homalg]") {
  std::mt19937 rng(21);
  std::vector<TruncatedComplex> cs;
  for (int i = 0; i < 20; ++i) {
    std::vector<Piece> pieces;
    auto a = random_complex(rng, pieces);
    auto b = random_complex(rng, pieces);
    cs.push_back(tensor(a, b));
  }
  std::vector<std::vector<BigradedHomology>> runs;
  for (int threads : {1, 2, 8}) {
    set_thread_count(threads);
    std::vector<BigradedHomology> hs;
    for (const auto& c : cs) hs.push_back(smith_homology(c, Window{-6, 2, 0, 0}));
    runs.push_back(std::move(hs));
  }
  set_thread_count(1);
  CHECK(runs[0] == runs[1]);
  CHECK(runs[0] == runs[2]);
}
