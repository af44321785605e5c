#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skeinhom/barproj.hpp"
#include "skeinhom/homalg.hpp"
#include "skeinhom/network.hpp"
#include "skeinhom/planar.hpp"

namespace skeinhom {

// A boundary segment of a region: a marked arc, or one side of a seam.
struct Segment {
  enum class Kind { arc, seam };
  Kind kind = Kind::arc;
  std::string id;
  int side = 1;  // seams only: +1 or -1

  static Segment arc(std::string id) { return {Kind::arc, std::move(id), 1}; }
  static Segment seam(std::string id, int side) { return {Kind::seam, std::move(id), side}; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ArcSpec {
  std::string id;
  int sign = 1;
  friend bool operator==(const ArcSpec&, const ArcSpec&) = default;
};

// Disk regions with cyclically ordered boundary segments. The first segment
// of each region starts its linear order.
struct SurfaceSpec {
  std::vector<ArcSpec> arcs;
  std::vector<std::string> seams;
  std::vector<std::vector<Segment>> regions;
};

struct SegmentRef {
  int region = -1;
  int segment = -1;
};

struct Surface {
  SurfaceSpec spec;
  std::vector<SegmentRef> arc_at;                        // per arc, in spec order
  std::vector<std::pair<SegmentRef, SegmentRef>> sides;  // per seam: + side, - side

  int region_count() const { return static_cast<int>(spec.regions.size()); }
  int seam_count() const { return static_cast<int>(spec.seams.size()); }
  int seam_index(const std::string& id) const;
  int arc_index(const std::string& id) const;
};

// Throws SpecError on dangling or doubled seam sides, unknown or repeated
// arcs, and disconnected surfaces.
Surface validate_surface(const SurfaceSpec& spec);

// One cap tangle per region, its blocks following the region's segments.
struct SurfaceTangle {
  std::vector<CapTangle> regions;
};

// Checks block counts against the surface and equal counts on both seam sides.
void check_tangle(const Surface& s, const SurfaceTangle& t);
int seam_points(const Surface& s, const SurfaceTangle& t, int seam);
int arc_points(const Surface& s, const SurfaceTangle& t, int arc);
bool same_tangle(const SurfaceTangle& a, const SurfaceTangle& b);

// The glued complex C(T|V|S) as a network: T chords, S chords and arc columns
// are fixed arcs; seam i carries a truncated bar family.
class HomComplex {
 public:
  // depth < 0 picks the smallest depth exact down to hmin.
  HomComplex(Surface surface, SurfaceTangle t, SurfaceTangle s, int depth,
             std::map<std::string, PlanarTangle> boundary = {}, int hmin = -4);

  const Surface& surface() const { return surface_; }
  const SurfaceTangle& t() const { return t_; }
  const SurfaceTangle& s() const { return s_; }
  int depth() const { return depth_; }
  const Network& network() const { return net_; }
  const SmallRing& ring(int seam) const { return *rings_[seam]; }
  const BarTruncation& bar(int seam) const { return bars_[seam]; }
  int word_index(int seam, const BarWord& w) const;
  bool identity_boundary() const { return boundary_.empty(); }

  // Vertex of flat point p of region r's T (or S) cap tangle.
  int t_vertex(int region, int p) const { return t_point_[region][p]; }
  int s_vertex(int region, int p) const { return s_point_[region][p]; }
  const std::vector<int>& left_slot(int seam) const { return net_.families[seam].slots[0]; }
  const std::vector<int>& right_slot(int seam) const { return net_.families[seam].slots[1]; }

  AssembledNetwork assemble(int qmin, int qmax) const;
  // All generators of all q, built once.
  const AssembledNetwork& full() const;
  int degree(const NetworkGenerator& g) const;
  int q_degree(const NetworkGenerator& g) const;
  Certificate certificate() const { return network_certificate(net_); }

 private:
  Surface surface_;
  SurfaceTangle t_, s_;
  int depth_;
  std::map<std::string, PlanarTangle> boundary_;
  Network net_;
  std::vector<std::shared_ptr<SmallRing>> rings_;
  std::vector<BarTruncation> bars_;
  std::vector<std::map<BarWord, int>> word_index_;
  std::vector<std::vector<int>> t_point_, s_point_;
  mutable std::shared_ptr<AssembledNetwork> full_;
};

int auto_depth(int hmin, int hint = -1);

BigradedHomology hom_homology(const HomComplex& c, const Window& w);

using SurfaceElement = std::map<NetworkGenerator, std::int64_t>;

SurfaceElement element_differential(const HomComplex& c, const SurfaceElement& x);
// Generators of one bidegree.
std::vector<NetworkGenerator> basis(const HomComplex& c, int degree, int q);

// a = C(T|S), b = C(S|R), target = C(T|R); identity boundary data only.
SurfaceElement compose(const HomComplex& a, const SurfaceElement& x, const HomComplex& b, const SurfaceElement& y,
                       const HomComplex& target);
// Length-0 identity words at every seam, all circles labeled 1.
SurfaceElement identity_unit(const HomComplex& c);

// Spec and tangles with a seam glued shut; SpecError if both sides lie in one region.
Surface remove_seam(const Surface& s, int seam);
SurfaceTangle merge_tangle(const Surface& s, const SurfaceTangle& t, int seam);

// Counit at one seam: the fine layout maps to the same layout with the seam
// closed by trivial arcs, which is isomorphic to the merged surface's network.
struct Coarsening {
  Network target;
  AssembledNetwork source_complex;
  AssembledNetwork target_complex;
  ChainMap map;
};
Coarsening coarsen(const HomComplex& fine, int seam, int qmin, int qmax);

// Rank of H^0 in one quantum degree; exact at depth 1.
int h0(const Surface& s, const SurfaceTangle& t, const SurfaceTangle& u, int q);

// Hom complex of X against Y; the reflection is trivial in this encoding.
BigradedHomology symmetrized_pairing(const Surface& s, const SurfaceTangle& x, const SurfaceTangle& y,
                                     const Window& w, int depth = -1);

// One square region [seam -, b1, seam +, b0] glued to itself along seam g.
Surface standard_annulus();
// The core circle of standard_annulus, meeting the seam once.
SurfaceTangle essential_circle();

// Moves the first k segments of a region to its end, with its tangles.
SurfaceSpec rotate_region(const SurfaceSpec& s, int region, int k);
CapTangle rotate_blocks(const CapTangle& t, int k);

}  // namespace skeinhom
