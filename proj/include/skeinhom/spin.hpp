#pragma once

#include <map>
#include <string>
#include <vector>

#include "skeinhom/planar.hpp"
#include "skeinhom/rational.hpp"
#include "skeinhom/surface.hpp"

namespace skeinhom {

// Linear combination of minimal (bottom, top)-tangles.
struct TLElement {
  int bottom = 0;
  int top = 0;
  std::map<PlanarTangle, RationalFunction> terms;

  static TLElement diagram(const PlanarTangle& t);
  void add(const PlanarTangle& t, const RationalFunction& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const TLElement&, const TLElement&) = default;
};

TLElement operator+(const TLElement& a, const TLElement& b);
TLElement operator*(const RationalFunction& c, const TLElement& a);
// upper stacked on lower; each closed circle is a factor [2].
TLElement tl_compose(const TLElement& upper, const TLElement& lower);
TLElement tl_juxtapose(const TLElement& left, const TLElement& right);
// Trace of an (n,n) element: top point i joined to bottom point i.
RationalFunction tl_closure(const TLElement& x);

// The n-strand Jones-Wenzl idempotent by Wenzl's recursion (cached).
const TLElement& wenzl(int n);
// e_i on n strands: a cap-cup pair on strands i, i+1.
TLElement tl_generator(int n, int i);

bool admissible(int a, int b, int c);
// Theta graph value; 0 for inadmissible triples.
RationalFunction theta(int a, int b, int c);
RationalFunction loop(int a);

// A coloring of the arcs and seams of a surface whose regions are triangles.
struct SpinNetwork {
  Surface surface;
  std::map<std::string, int> coloring;
};

// Throws SpecError for non-triangles or missing colors, AdmissibilityError
// naming the first bad triangle or seam.
void check_admissible(const SpinNetwork& net);
// Product of thetas over triangles over the product of loops over seams.
RationalFunction pairing_prediction(const SpinNetwork& net);
// Zero unless the two colorings agree; their boundary colors must agree.
RationalFunction cross_pairing(const SpinNetwork& a, const SpinNetwork& b);

// Decategorified C(T|S): Gram inverses at the seams, [2] per circle, the Hom shift.
RationalFunction skein_pairing(const HomComplex& c);

// Truncated Euler series against the series of a rational prediction.
struct CrosscheckReport {
  std::string scenario;
  int order = 0;
  int depth = 0;
  std::map<int, mpz_class> computed;
  std::map<int, mpz_class> predicted;
  RationalFunction prediction;
  std::vector<int> mismatches;  // exponents where the two differ
};

// Scenarios: bproj2, annulus, strands0, nabla112. depth < 0 picks one that
// certifies the order; an explicit depth too small throws TruncationError.
CrosscheckReport euler_crosscheck(const std::string& scenario, int order, int depth = -1);

// Hom(T, P2 * T) on the triangle colored (1, 1, 2), P2 on the arc colored 2.
Network nabla_network(int depth);

}  // namespace skeinhom
