#include "skeinhom/tqft.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "skeinhom/errors.hpp"

namespace skeinhom {

std::string labeling_string(Labeling l, int circles) {
  std::string s(circles, '1');
  for (int c = 0; c < circles; ++c)
    if (l >> c & 1) s[c] = 'x';
  return s;
}

StateVector::StateVector(std::vector<Arc> arcs) : arcs_(std::move(arcs)), diagram_(trace_circles(arcs_)) {
  if (diagram_.size() > 63) throw std::length_error("more than 63 circles in one diagram");
}

void StateVector::add(Labeling l, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(l, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t StateVector::coefficient(Labeling l) const {
  auto it = terms_.find(l);
  return it == terms_.end() ? 0 : it->second;
}

int StateVector::kh_degree(Labeling l) const { return 2 * std::popcount(l) - circle_count(); }

StateVector& StateVector::operator+=(const StateVector& o) {
  if (o.arcs_ != arcs_) throw InvalidBoundary("adding states over different diagrams");
  for (const auto& [l, c] : o.terms_) add(l, c);
  return *this;
}

StateVector& StateVector::operator*=(std::int64_t s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [l, c] : terms_) c *= s;
  return *this;
}

std::string StateVector::to_json() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [l, c] : terms_) {
    out << (first ? "" : ", ") << '"' << labeling_string(l, circle_count()) << "\": " << c;
    first = false;
  }
  out << '}';
  return out.str();
}

int integral_offset(int quarters) {
  if (quarters % 4 != 0) throw GradingError("quantum offset " + std::to_string(quarters) + "/4 is not an integer");
  return quarters / 4;
}

GradedBasisModule kh_eval(const ClosedDiagram& d, int quantum_offset) {
  GradedBasisModule m;
  const int k = d.size();
  if (k > 30) throw std::length_error("too many circles to enumerate");
  for (Labeling l = 0; l < (Labeling(1) << k); ++l)
    m.add({0, quantum_offset + 2 * std::popcount(l) - k}, labeling_string(l, k));
  return m;
}

int max_vertex(std::span<const Arc> arcs) {
  int m = -1;
  for (const auto& a : arcs) m = std::max({m, a[0], a[1]});
  return m;
}

StateVector rewire(const StateVector& s, std::vector<Arc> new_arcs) {
  const auto& old_arcs = s.arcs();
  if (new_arcs.size() != old_arcs.size()) throw InvalidSite("band move must keep the arc count");
  StateVector out(std::move(new_arcs));
  const auto& od = s.diagram();
  const auto& nd = out.diagram();
  std::set<int> old_touched, new_touched;
  for (std::size_t i = 0; i < old_arcs.size(); ++i) {
    if (old_arcs[i] == out.arcs()[i]) continue;
    old_touched.insert(od.component_of[i]);
    new_touched.insert(nd.component_of[i]);
  }
  const bool merge = old_touched.size() == 2 && new_touched.size() == 1;
  const bool split = old_touched.size() == 1 && new_touched.size() == 2;
  if (!merge && !split) throw InvalidSite("arc change is not a single orientable saddle");
  // Untouched circles keep their arcs, so any arc identifies the new index.
  std::vector<int> image(od.size(), -1);
  for (int c = 0; c < od.size(); ++c)
    if (!old_touched.count(c)) image[c] = nd.component_of[od.circles[c].front()];
  for (const auto& [l, coef] : s.terms()) {
    Labeling base = 0;
    for (int c = 0; c < od.size(); ++c)
      if (image[c] >= 0 && (l >> c & 1)) base |= Labeling(1) << image[c];
    if (merge) {
      auto it = old_touched.begin();
      int a = *it++, b = *it;
      int x = static_cast<int>((l >> a & 1) + (l >> b & 1));
      if (x == 2) continue;
      int c = *new_touched.begin();
      out.add(x == 1 ? base | Labeling(1) << c : base, coef);
    } else {
      int a = *old_touched.begin();
      auto it = new_touched.begin();
      int b = *it++, c = *it;
      Labeling xb = Labeling(1) << b, xc = Labeling(1) << c;
      if (l >> a & 1) {
        out.add(base | xb | xc, coef);
      } else {
        out.add(base | xb, coef);
        out.add(base | xc, coef);
      }
    }
  }
  return out;
}

StateVector surgery(const StateVector& s, int arc_i, int arc_j) {
  const int n = static_cast<int>(s.arcs().size());
  if (arc_i < 0 || arc_j < 0 || arc_i >= n || arc_j >= n || arc_i == arc_j)
    throw InvalidSite("surgery site (" + std::to_string(arc_i) + "," + std::to_string(arc_j) + ") not in diagram");
  std::vector<Arc> arcs = s.arcs();
  auto [u, v] = arcs[arc_i];
  auto [w, z] = arcs[arc_j];
  arcs[arc_i] = {u, w};
  arcs[arc_j] = {v, z};
  return rewire(s, std::move(arcs));
}

StateVector add_dot(const StateVector& s, int circle) {
  if (circle < 0 || circle >= s.circle_count()) throw InvalidSite("no circle " + std::to_string(circle));
  StateVector out(s.arcs());
  for (const auto& [l, c] : s.terms())
    if (!(l >> circle & 1)) out.add(l | Labeling(1) << circle, c);
  return out;
}

StateVector disjoint_union(const StateVector& a, const StateVector& b) {
  const int shift = max_vertex(a.arcs()) + 1;
  std::vector<Arc> arcs = a.arcs();
  for (const auto& arc : b.arcs()) arcs.push_back({arc[0] + shift, arc[1] + shift});
  StateVector out(std::move(arcs));
  const int na = a.circle_count();
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) out.add(la | lb << na, ca * cb);
  return out;
}

StateVector transport(const StateVector& s, std::vector<Arc> target_arcs, std::span<const int> rep) {
  StateVector out(std::move(target_arcs));
  const auto& td = out.diagram();
  if (td.size() != s.circle_count()) throw InvalidBoundary("transport between diagrams with different circle counts");
  std::vector<int> source_of(td.size(), -1);
  std::vector<char> used(s.circle_count(), 0);
  for (int c = 0; c < td.size(); ++c) {
    for (int arc : td.circles[c]) {
      if (rep[arc] < 0) continue;
      int sc = s.diagram().component_of[rep[arc]];
      if (source_of[c] < 0) {
        source_of[c] = sc;
      } else if (source_of[c] != sc) {
        throw InvalidBoundary("transport map splits a circle");
      }
    }
    if (source_of[c] < 0 || used[source_of[c]]) throw InvalidBoundary("transport map is not a bijection on circles");
    used[source_of[c]] = 1;
  }
  for (const auto& [l, coef] : s.terms()) {
    Labeling m = 0;
    for (int c = 0; c < td.size(); ++c)
      if (l >> source_of[c] & 1) m |= Labeling(1) << c;
    out.add(m, coef);
  }
  return out;
}

std::vector<Arc> hom_arcs(const PlanarTangle& a, const PlanarTangle& b) {
  if (a.bottom_count() != b.bottom_count() || a.top_count() != b.top_count())
    throw InvalidBoundary("Hom between tangles with different boundaries");
  std::vector<Arc> arcs = chords(a);
  auto bc = chords(b);
  arcs.insert(arcs.end(), bc.begin(), bc.end());
  int fresh = a.size();
  for (int i = 0; i < a.free_circles() + b.free_circles(); ++i, ++fresh) arcs.push_back({fresh, fresh});
  return arcs;
}

GradedBasisModule hom_space(const PlanarTangle& a, const PlanarTangle& b) {
  auto arcs = hom_arcs(a, b);
  return kh_eval(trace_circles(arcs), a.size() / 2);
}

int hom_degree(const HomElement& f, Labeling l) { return f.source.size() / 2 + f.state.kh_degree(l); }

HomElement hom_zero(const PlanarTangle& a, const PlanarTangle& b) { return {a, b, StateVector(hom_arcs(a, b))}; }

HomElement hom_basis_element(const PlanarTangle& a, const PlanarTangle& b, Labeling l) {
  HomElement f = hom_zero(a, b);
  if (l >> f.state.circle_count()) throw InvalidSite("labeling has bits beyond the circle count");
  f.state.add(l, 1);
  return f;
}

HomElement hom_unit(const PlanarTangle& a) { return hom_basis_element(a, a, 0); }

HomElement pair_hom_elements(const HomElement& f, const HomElement& g) {
  if (f.target != g.source) throw InvalidBoundary("pair_hom_elements: middle tangles differ");
  const auto& a = f.source;
  const auto& b = f.target;
  const auto& c = g.target;
  if (!a.is_minimal() || !b.is_minimal() || !c.is_minimal())
    throw InvalidBoundary("pair_hom_elements needs minimal tangles");
  const int n = a.size();
  const int h = n / 2;
  StateVector u = disjoint_union(f.state, g.state);
  std::vector<Arc> arcs = u.arcs();
  // f's b-chords are arcs h..2h-1; g's are 2h..3h-1, over vertices shifted by n.
  StateVector cur = u;
  for (int k = 0; k < h; ++k) {
    std::vector<Arc> next = cur.arcs();
    auto [p, q] = next[h + k];
    next[h + k] = {p, p + n};
    next[2 * h + k] = {q, q + n};
    cur = rewire(cur, std::move(next));
  }
  std::vector<Arc> target = hom_arcs(a, c);
  std::vector<int> rep(target.size());
  for (int k = 0; k < h; ++k) {
    rep[k] = k;
    rep[h + k] = 3 * h + k;
  }
  return {a, c, transport(cur, std::move(target), rep)};
}

}  // namespace skeinhom
