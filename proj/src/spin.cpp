#include "skeinhom/spin.hpp"

#include <climits>
#include <set>
#include <mutex>

#include "skeinhom/errors.hpp"

namespace skeinhom {

TLElement TLElement::diagram(const PlanarTangle& t) {
  TLElement x{t.bottom_count(), t.top_count(), {}};
  x.add(t, 1);
  return x;
}

void TLElement::add(const PlanarTangle& t, const RationalFunction& c) {
  if (t.bottom_count() != bottom || t.top_count() != top) throw InvalidBoundary("TL term has the wrong boundary");
  if (!t.is_minimal()) throw InvalidBoundary("TL terms carry no circles");
  auto [it, fresh] = terms.try_emplace(t, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

TLElement operator+(const TLElement& a, const TLElement& b) {
  TLElement out = a;
  for (const auto& [t, c] : b.terms) out.add(t, c);
  return out;
}

TLElement operator*(const RationalFunction& c, const TLElement& a) {
  TLElement out{a.bottom, a.top, {}};
  if (c.is_zero()) return out;
  for (const auto& [t, x] : a.terms) out.add(t, c * x);
  return out;
}

namespace {

RationalFunction circles(int k) {
  BigLaurent p(mpz_class(1));
  for (int i = 0; i < k; ++i) p *= BigLaurent::quantum_integer(2);
  return RationalFunction(p);
}

}  // namespace

TLElement tl_compose(const TLElement& upper, const TLElement& lower) {
  if (upper.bottom != lower.top)
    throw InvalidBoundary("TL compose: " + std::to_string(upper.bottom) + " strands over " +
                          std::to_string(lower.top));
  TLElement out{lower.bottom, upper.top, {}};
  for (const auto& [a, x] : upper.terms)
    for (const auto& [b, y] : lower.terms) {
      PlanarTangle t = compose(a, b);
      out.add(t.without_circles(), x * y * circles(t.free_circles()));
    }
  return out;
}

TLElement tl_juxtapose(const TLElement& left, const TLElement& right) {
  TLElement out{left.bottom + right.bottom, left.top + right.top, {}};
  for (const auto& [a, x] : left.terms)
    for (const auto& [b, y] : right.terms) out.add(juxtapose(a, b), x * y);
  return out;
}

RationalFunction tl_closure(const TLElement& x) {
  if (x.bottom != x.top) throw InvalidBoundary("closure of a TL element with unequal ends");
  const int n = x.bottom;
  RationalFunction out;
  for (const auto& [t, c] : x.terms) {
    std::vector<Arc> arcs = chords(t);
    for (int i = 0; i < n; ++i) arcs.push_back({i, n + i});
    out += c * circles(trace_circles(arcs).size() + t.free_circles());
  }
  return out;
}

TLElement tl_generator(int n, int i) {
  if (i < 0 || i + 2 > n) throw InvalidBoundary("e_" + std::to_string(i) + " needs two strands");
  const auto e = PlanarTangle::parse("[1,0,3,2]", 2, 2);
  return TLElement::diagram(juxtapose(juxtapose(PlanarTangle::identity(i), e), PlanarTangle::identity(n - i - 2)));
}

const TLElement& wenzl(int n) {
  if (n < 0) throw InvalidBoundary("negative strand count");
  static std::mutex lock;
  static std::vector<TLElement> cache;
  std::lock_guard guard(lock);
  if (cache.empty()) cache.push_back(TLElement::diagram(PlanarTangle::identity(0)));
  while (static_cast<int>(cache.size()) <= n) {
    const int k = static_cast<int>(cache.size());
    const TLElement p = tl_juxtapose(cache.back(), TLElement::diagram(PlanarTangle::identity(1)));
    if (k == 1) {
      cache.push_back(p);
      continue;
    }
    const TLElement pep = tl_compose(tl_compose(p, tl_generator(k, k - 2)), p);
    cache.push_back(p + (-(RationalFunction::quantum_integer(k - 1) / RationalFunction::quantum_integer(k))) * pep);
  }
  return cache[n];
}

bool admissible(int a, int b, int c) {
  return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b;
}

RationalFunction theta(int a, int b, int c) {
  if (!admissible(a, b, c)) return {};
  const int j = (a + b - c) / 2;  // strands joining a to b
  auto id = [](int k) { return PlanarTangle::identity(k); };
  const auto split = TLElement::diagram(juxtapose(juxtapose(id(a - j), PlanarTangle::nested_cups(j)), id(b - j)));
  const auto join = TLElement::diagram(juxtapose(juxtapose(id(a - j), PlanarTangle::nested_caps(j)), id(b - j)));
  const TLElement top = tl_juxtapose(wenzl(a), wenzl(b));
  return tl_closure(tl_compose(tl_compose(tl_compose(top, split), wenzl(c)), join));
}

RationalFunction loop(int a) { return tl_closure(wenzl(a)); }

namespace {

int segment_color(const SpinNetwork& net, const Segment& s) {
  auto it = net.coloring.find(s.id);
  if (it == net.coloring.end()) throw SpecError("no color for '" + s.id + "'");
  return it->second;
}

}  // namespace

void check_admissible(const SpinNetwork& net) {
  const auto& regions = net.surface.spec.regions;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (regions[r].size() != 3)
      throw SpecError("region " + std::to_string(r) + " has " + std::to_string(regions[r].size()) +
                      " segments, spin networks need triangles");
    int c[3];
    for (int k = 0; k < 3; ++k) c[k] = segment_color(net, regions[r][k]);
    if (!admissible(c[0], c[1], c[2]))
      throw AdmissibilityError("triangle " + std::to_string(r) + " has inadmissible colors (" + std::to_string(c[0]) +
                               "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")");
  }
}

RationalFunction pairing_prediction(const SpinNetwork& net) {
  check_admissible(net);
  RationalFunction out(1);
  for (const auto& region : net.surface.spec.regions)
    out *= theta(segment_color(net, region[0]), segment_color(net, region[1]), segment_color(net, region[2]));
  for (const auto& g : net.surface.spec.seams) out /= loop(net.coloring.at(g));
  return out;
}

RationalFunction cross_pairing(const SpinNetwork& a, const SpinNetwork& b) {
  if (a.surface.spec.arcs != b.surface.spec.arcs || a.surface.spec.seams != b.surface.spec.seams ||
      a.surface.spec.regions != b.surface.spec.regions)
    throw InvalidBoundary("spin networks on different surfaces");
  check_admissible(a);
  check_admissible(b);
  for (const auto& arc : a.surface.spec.arcs)
    if (a.coloring.at(arc.id) != b.coloring.at(arc.id))
      throw InvalidBoundary("boundary colors differ on arc '" + arc.id + "'");
  for (const auto& g : a.surface.spec.seams)
    if (a.coloring.at(g) != b.coloring.at(g)) return {};
  return pairing_prediction(a);
}

namespace {

RationalFunction graded_rank(const GradedBasisModule& m) {
  BigLaurent p;
  for (int i = 0; i < m.size(); ++i) p.add(m.degree(i).q, mpz_class(1));
  return RationalFunction(p);
}

// Gauss-Jordan inverse over Q(q).
std::vector<std::vector<RationalFunction>> invert(std::vector<std::vector<RationalFunction>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<RationalFunction>> inv(n, std::vector<RationalFunction>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("singular Gram matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const RationalFunction pivot = a[c][c];
    for (int k = 0; k < n; ++k) {
      a[c][k] /= pivot;
      inv[c][k] /= pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const RationalFunction f = a[r][c];
      for (int k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

RationalFunction skein_pairing(const HomComplex& c) {
  const Network& net = c.network();
  const int ng = static_cast<int>(net.families.size());
  std::vector<std::vector<std::vector<RationalFunction>>> ginv(ng);
  for (int g = 0; g < ng; ++g) {
    const auto& ring = c.ring(g);
    std::vector<std::vector<RationalFunction>> gram(ring.size(), std::vector<RationalFunction>(ring.size()));
    for (int a = 0; a < ring.size(); ++a)
      for (int b = 0; b < ring.size(); ++b) gram[a][b] = graded_rank(ring.hom_basis(a, b));
    ginv[g] = invert(std::move(gram));
  }
  RationalFunction total;
  std::vector<std::pair<int, int>> ends(ng);
  auto walk = [&](auto&& self, int g, RationalFunction weight) -> void {
    if (weight.is_zero()) return;
    if (g == ng) {
      std::vector<Arc> arcs = net.fixed;
      for (int f = 0; f < ng; ++f) {
        const auto& slots = net.families[f].slots;
        for (int side = 0; side < 2; ++side) {
          const auto& t = c.ring(f).object(side == 0 ? ends[f].first : ends[f].second);
          for (const auto& [p, q] : chords(t)) arcs.push_back({slots[side][p], slots[side][q]});
        }
      }
      total += weight * circles(trace_circles(arcs).size());
      return;
    }
    const int k = c.ring(g).size();
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        ends[g] = {a, b};
        self(self, g + 1, weight * ginv[g][a][b]);
      }
  };
  walk(walk, 0, RationalFunction(1));
  return total * RationalFunction(BigLaurent::monomial(integral_offset(net.offset_quarters)));
}

Network nabla_network(int depth) {
  // T and S: alpha(0) to gamma(3), beta(1) to gamma(2); S points are 4..7.
  Network net;
  net.vertex_count = 8;
  net.fixed = {{0, 3}, {1, 2}, {4, 7}, {5, 6}, {4, 0}, {5, 1}};
  SlotFamily p2 = hardcoded_p2(depth);
  p2.slots = {{6, 7, 2, 3}};
  net.families.push_back(std::move(p2));
  net.offset_quarters = 8;
  return net;
}

namespace {

std::map<int, mpz_class> truncated(const LaurentPoly& p, int order) {
  std::map<int, mpz_class> out;
  for (const auto& [e, c] : p.terms())
    if (e <= order) out[e] = mpz_class(static_cast<long>(c));
  return out;
}

// Smallest depth whose omitted degrees all lie above the order.
template <typename Cert>
int certified_depth(int order, int depth, Cert cert) {
  if (depth >= 0) {
    if (cert(depth) <= order)
      throw TruncationError("order " + std::to_string(order) + " exceeds what depth " + std::to_string(depth) +
                            " certifies");
    return depth;
  }
  int d = 0;
  while (cert(d) <= order) ++d;
  return d;
}

}  // namespace

CrosscheckReport euler_crosscheck(const std::string& scenario, int order, int depth) {
  CrosscheckReport r;
  r.scenario = scenario;
  r.order = order;
  if (scenario == "bproj2") {
    // Degree -s holds q^{2s+1} e; depth d omits s = d + 1 onward.
    r.depth = certified_depth(order, depth, [](int d) { return 2 * d + 3; });
    const auto e = PlanarTangle::parse("[1,0,3,2]", 2, 2);
    const auto cls = euler_class(bproj_truncate(2, r.depth));
    if (auto it = cls.find(e); it != cls.end()) r.computed = truncated(it->second, order);
    r.prediction = RationalFunction(1) / RationalFunction::quantum_integer(2);
  } else if (scenario == "annulus" || scenario == "strands0") {
    const Surface s = standard_annulus();
    const SurfaceTangle t = scenario == "annulus" ? essential_circle()
                                                  : SurfaceTangle{{CapTangle(PlanarTangle(0, 0, {}), {0, 0, 0, 0})}};
    auto cert = [&](int d) { return HomComplex(s, t, t, d).certificate().bound(d + 1); };
    r.depth = certified_depth(order, depth, cert);
    HomComplex c(s, t, t, r.depth);
    r.computed = truncated(c.assemble(INT_MIN, order).complex.euler_of_chains(), order);
    r.prediction = skein_pairing(c);
  } else if (scenario == "nabla112") {
    auto cert = [](int d) { return network_certificate(nabla_network(d)).bound(d + 1); };
    r.depth = certified_depth(order, depth, cert);
    r.computed = truncated(assemble(nabla_network(r.depth), INT_MIN, order).complex.euler_of_chains(), order);
    SpinNetwork tri{validate_surface({{{"a", 1}, {"b", 1}, {"c", 1}}, {}, {{Segment::arc("a"), Segment::arc("b"),
                                                                              Segment::arc("c")}}}),
                    {{"a", 1}, {"b", 1}, {"c", 2}}};
    r.prediction = pairing_prediction(tri) * RationalFunction(BigLaurent::monomial(2));
  } else {
    throw SpecError("unknown crosscheck scenario '" + scenario + "'");
  }
  r.predicted = r.prediction.series(order);
  std::set<int> exps;
  for (const auto& [e, c] : r.computed) exps.insert(e);
  for (const auto& [e, c] : r.predicted) exps.insert(e);
  for (int e : exps) {
    auto a = r.computed.find(e), b = r.predicted.find(e);
    const mpz_class x = a == r.computed.end() ? mpz_class(0) : a->second;
    const mpz_class y = b == r.predicted.end() ? mpz_class(0) : b->second;
    if (x != y) r.mismatches.push_back(e);
  }
  return r;
}

}  // namespace skeinhom
