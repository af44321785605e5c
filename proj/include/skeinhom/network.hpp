#pragma once

#include <climits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skeinhom/homalg.hpp"
#include "skeinhom/planar.hpp"
#include "skeinhom/tqft.hpp"

namespace skeinhom {

// A chain object of a family: one minimal tangle per slot, a homological
// degree and a quantum shift.
struct SlotObject {
  int degree = 0;
  int shift = 0;
  std::vector<PlanarTangle> fill;
  std::string label;
};

// coef times the product of per-slot actions; nullopt leaves the slot alone.
struct SlotArrow {
  int from = 0;
  int to = 0;
  std::int64_t coef = 1;
  std::vector<std::optional<HomElement>> action;
};

// A complex whose objects fill a fixed set of slots. Degrees below
// -complete_depth are absent; complete_depth = INT_MAX marks a finite family.
struct SlotFamily {
  std::vector<std::vector<int>> slots;  // vertex ids in tangle point order
  std::vector<SlotObject> objects;
  std::vector<SlotArrow> arrows;
  int complete_depth = INT_MAX;
  Certificate bound{0, 0};  // shift of an object in degree -r is >= bound(r)

  bool finite() const { return complete_depth == INT_MAX; }
  int slot_count() const { return static_cast<int>(slots.size()); }
};

// Differential of the family must square to zero; throws ChainMapError otherwise.
void check_family(const SlotFamily& f);

// Closed diagram with holes: fixed arcs plus slot families, evaluated by Kh.
struct Network {
  int vertex_count = 0;
  std::vector<Arc> fixed;
  std::vector<SlotFamily> families;
  int offset_quarters = 0;
};

struct NetworkGenerator {
  std::vector<int> objects;  // one object index per family
  Labeling labeling = 0;
  friend auto operator<=>(const NetworkGenerator&, const NetworkGenerator&) = default;
};

struct AssembledNetwork {
  TruncatedComplex complex;
  std::map<int, std::vector<NetworkGenerator>> generators;
  std::map<int, std::map<NetworkGenerator, int>> index;
  int find(int degree, const NetworkGenerator& g) const;
};

// Arcs for a choice of objects: fixed arcs, then the chords of every slot of
// every family, each chord (slot[p], slot[q]) with p < q.
std::vector<Arc> network_arcs(const Network& net, std::span<const int> objects);
// First arc index of each family's chords in network_arcs.
std::vector<int> family_arc_base(const Network& net);

// Kh action of a on the chords of one slot whose arcs start at arc_base.
// The result lives on the same arc layout with the slot refilled by f.target.
StateVector act_on_slot(const StateVector& s, std::span<const int> slot, int arc_base, const HomElement& f);

// Generators with q in [qmin, qmax]; total degree limited to >= -min depth.
AssembledNetwork assemble(const Network& net, int qmin, int qmax);

// Lower bound on q in total degree -r among all object tuples.
Certificate network_certificate(const Network& net);

// Chain maps and cones between single-slot families sharing a slot layout.
struct FamilyMap {
  std::vector<SlotArrow> arrows;  // from source objects to target objects
};
SlotFamily family_cone(const SlotFamily& source, const SlotFamily& target, const FamilyMap& f);
// Reverse the arc order so an element of H(a,b) reads as one of H(b,a).
HomElement swap_ends(const HomElement& f);

}  // namespace skeinhom
