#pragma once

#include <map>
#include <vector>

#include "skeinhom/homalg.hpp"
#include "skeinhom/laurent.hpp"
#include "skeinhom/network.hpp"
#include "skeinhom/planar.hpp"
#include "skeinhom/tqft.hpp"

namespace skeinhom {

// Minimal (m,n)-tangles and the Hom spaces between them, basis index = labeling.
class SmallRing {
 public:
  SmallRing(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int size() const { return static_cast<int>(objects_.size()); }
  const std::vector<PlanarTangle>& objects() const { return objects_; }
  const PlanarTangle& object(int a) const { return objects_[a]; }
  int index_of(const PlanarTangle& t) const;

  const GradedBasisModule& hom_basis(int a, int b) const { return basis_[a][b]; }
  int hom_dim(int a, int b) const { return hom_basis(a, b).size(); }
  int degree(int a, int b, Labeling l) const { return hom_basis(a, b).degree(static_cast<int>(l)).q; }
  HomElement element(int a, int b, Labeling l) const;
  // Basis labelings of H(a,b) other than the identity.
  std::vector<Labeling> reduced(int a, int b) const;
  // Product of basis elements in H(a,b) x H(b,c), expanded in H(a,c).
  const StateVector& product(int a, int b, int c, Labeling x, Labeling y) const;
  // Lowest degree of a reduced letter.
  int min_reduced_degree() const { return min_reduced_; }

 private:
  int m_, n_;
  std::vector<PlanarTangle> objects_;
  std::vector<std::vector<GradedBasisModule>> basis_;
  std::map<std::tuple<int, int, int, Labeling, Labeling>, StateVector> products_;
  int min_reduced_ = 1;
};

// a_0 -f_1- a_1 ... -f_r- a_r with reduced basis letters f_i in H(a_{i-1}, a_i).
struct BarWord {
  std::vector<int> objects;
  std::vector<Labeling> letters;
  int length() const { return static_cast<int>(letters.size()); }
  friend auto operator<=>(const BarWord&, const BarWord&) = default;
};

using BarElement = std::map<BarWord, std::int64_t>;

std::vector<BarWord> enumerate_bar_words(const SmallRing& ring, int depth);
int word_degree(const SmallRing& ring, const BarWord& w);
std::string word_label(const SmallRing& ring, const BarWord& w);

// Words up to a depth, with chain-group counts and the cobordism differential.
struct BarTruncation {
  int depth = 0;
  std::vector<BarWord> words;
  std::map<int, GradedBasisModule> groups;  // degree -r -> words of length r at q = word degree
  SlotFamily family;                        // two slots: a_0 end, a_r end
  Certificate certificate;
};

// The two slots read their fills through the given vertex lists.
BarTruncation bar_truncate(const SmallRing& ring, int depth, std::vector<int> left_slot = {},
                           std::vector<int> right_slot = {});
// Terms of the differential of one word: (word, coef) for letter compositions only.
BarElement inner_differential(const SmallRing& ring, const BarWord& w);

// Bending an (m,n)-tangle onto N = m+n points in cyclic order.
PlanarTangle bend_top(const PlanarTangle& t);
PlanarTangle bend_bottom(const PlanarTangle& t);
// Through-degree-zero (N,N)-tangle: top = bend(a), bottom = bend(b).
PlanarTangle through_zero(const PlanarTangle& a, const PlanarTangle& b);
// f in H(a,b) placed on the top half of H(iota(a,c), iota(b,c)), or on the bottom.
HomElement embed_top(const HomElement& f, const PlanarTangle& c);
HomElement embed_bottom(const HomElement& f, const PlanarTangle& c);

// Single-slot family of (N,N)-tangles: bottom projector truncated at a depth.
SlotFamily bproj_truncate(int strands, int depth, int split_bottom = -1);
// Identity tangle in degree 0.
SlotFamily identity_family(int strands);
// Saddles from iota(a,a) to the identity in degree 0, zero elsewhere.
FamilyMap counit(const SlotFamily& projector, int strands);
SlotFamily counit_cone(int strands, int depth);
// Explicit strands-2 projector: identity in degree 0, q^{2s+1} e in degree -(s+1).
SlotFamily hardcoded_p2(int depth);
// sum (-1)^deg q^shift [fill] over the family's objects.
std::map<PlanarTangle, LaurentPoly> euler_class(const SlotFamily& f);
// GradedBasisModule of objects per degree (labels from objects).
std::map<int, GradedBasisModule> object_counts(const SlotFamily& f);

// Hom(b, f * below) for a single-slot family f of (N,N)-tangles.
Network hom_network(const PlanarTangle& b, const SlotFamily& f, const PlanarTangle& below);

// f * id_b in H(a*b, a'*b) for f in H(a,a') and a 1-morphism b below; id_a * g likewise.
HomElement star_id(const HomElement& f, const PlanarTangle& below);
HomElement id_star(const PlanarTangle& above, const HomElement& g);

// Shuffle product Bar(outer) x Bar(inner) -> Bar(composite) for rings (m,n), (k,m), (k,n).
BarElement shuffle_product(const SmallRing& upper, const SmallRing& lower, const SmallRing& composite,
                           const BarElement& x, const BarElement& y, int max_depth);
BarElement unit_word(const SmallRing& ring, int object);

}  // namespace skeinhom
