#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "skeinhom/homalg.hpp"
#include "skeinhom/planar.hpp"

namespace skeinhom {

// Bit c set means circle c carries x, clear means 1.
using Labeling = std::uint64_t;

std::string labeling_string(Labeling l, int circles);

// An element of Kh of a closed diagram in the standard {1, x} basis.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Arc> arcs);

  const std::vector<Arc>& arcs() const { return arcs_; }
  const ClosedDiagram& diagram() const { return diagram_; }
  int circle_count() const { return diagram_.size(); }

  void add(Labeling l, std::int64_t c);
  const std::map<Labeling, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(Labeling l) const;
  // #x - #1 for the given labeling.
  int kh_degree(Labeling l) const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator*=(std::int64_t s);
  friend bool operator==(const StateVector& a, const StateVector& b) { return a.arcs_ == b.arcs_ && a.terms_ == b.terms_; }

  // {"1x": 2, ...}, circle 0 first.
  std::string to_json() const;

 private:
  std::vector<Arc> arcs_;
  ClosedDiagram diagram_;
  std::map<Labeling, std::int64_t> terms_;
};

// Throws GradingError unless quarters is divisible by 4.
int integral_offset(int quarters);

GradedBasisModule kh_eval(const ClosedDiagram& d, int quantum_offset);

// Saddle replacing arcs (u,v),(w,z) with (u,w),(v,z); merges two circles by
// multiplication or splits one by comultiplication.
StateVector surgery(const StateVector& s, int arc_i, int arc_j);
// Band move to a new arc list of the same length; exactly one merge or split.
StateVector rewire(const StateVector& s, std::vector<Arc> new_arcs);
StateVector add_dot(const StateVector& s, int circle);
// b's vertex ids are shifted past a's; circles of a come first.
StateVector disjoint_union(const StateVector& a, const StateVector& b);
int max_vertex(std::span<const Arc> arcs);
// Re-express s on a target diagram whose circles correspond to those of s.
// rep[t] is an arc of s lying on the same circle as target arc t, or -1.
StateVector transport(const StateVector& s, std::vector<Arc> target_arcs, std::span<const int> rep);

// H(a,b) = q^{N/2} Kh(a u b) with arcs: chords of a, then chords of b.
struct HomElement {
  PlanarTangle source;
  PlanarTangle target;
  StateVector state;
  friend bool operator==(const HomElement&, const HomElement&) = default;
};

std::vector<Arc> hom_arcs(const PlanarTangle& a, const PlanarTangle& b);
GradedBasisModule hom_space(const PlanarTangle& a, const PlanarTangle& b);
int hom_degree(const HomElement& f, Labeling l);
HomElement hom_zero(const PlanarTangle& a, const PlanarTangle& b);
HomElement hom_basis_element(const PlanarTangle& a, const PlanarTangle& b, Labeling l);
HomElement hom_unit(const PlanarTangle& a);
// f in H(a,b), g in H(b,c) -> H(a,c), by one saddle per chord of b.
HomElement pair_hom_elements(const HomElement& f, const HomElement& g);

}  // namespace skeinhom
