#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skeinhom/laurent.hpp"

namespace skeinhom {

struct Bidegree {
  int hom = 0;
  int q = 0;
  friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.hom + b.hom, a.q + b.q}; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

// Free bigraded module with an ordered basis.
class GradedBasisModule {
 public:
  void add(Bidegree degree, std::string label = {});
  int size() const { return static_cast<int>(degrees_.size()); }
  Bidegree degree(int i) const { return degrees_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  // Sum of q^j over generators (homological degrees ignored).
  LaurentPoly graded_rank() const;
  std::optional<int> min_q() const;

 private:
  std::vector<Bidegree> degrees_;
  std::vector<std::string> labels_;
};

struct MatrixEntry {
  int row;
  int col;
  std::int64_t value;
  friend auto operator<=>(const MatrixEntry&, const MatrixEntry&) = default;
};

// Coordinate-list integer matrix; normalize() sorts by (row, col) and merges.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void add(int row, int col, std::int64_t value);
  void normalize();
  const std::vector<MatrixEntry>& entries() const& { return entries_; }
  std::vector<MatrixEntry> entries() && { return std::move(entries_); }
  bool is_zero() const;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  SparseMatrix operator-() const;
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(SparseMatrix a, SparseMatrix b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<MatrixEntry> entries_;
  bool normalized_ = true;
};

// Lower bound on quantum degrees in homological degree -r: slope*r + intercept.
struct Certificate {
  int slope = 1;
  int intercept = 0;
  int bound(int r) const { return slope * r + intercept; }
};

// A window of a bounded-above complex. Degrees below `complete_from` are
// missing (truncated) unless the complex is finite. Generators may be restricted
// to a quantum window; the differential preserves q so this is exact.
class TruncatedComplex {
 public:
  TruncatedComplex() = default;

  void set_group(int degree, GradedBasisModule module);
  // d: degree -> degree+1, rows index the target group.
  void set_differential(int degree, SparseMatrix d);

  const GradedBasisModule& group(int degree) const;
  SparseMatrix differential(int degree) const;
  std::vector<int> degrees() const;
  int hmin() const;
  int hmax() const;

  bool finite() const { return finite_; }
  void set_finite(bool f) { finite_ = f; }
  // Lowest degree whose chain group is complete.
  int complete_from() const { return complete_from_; }
  void set_complete_from(int d) { complete_from_ = d; }
  const std::optional<Certificate>& certificate() const { return certificate_; }
  void set_certificate(Certificate c) { certificate_ = c; }
  std::pair<int, int> q_window() const { return q_window_; }
  void set_q_window(int qmin, int qmax) { q_window_ = {qmin, qmax}; }

  // Throws ChainMapError naming the first nonzero entry of d^2.
  void check_d_squared() const;
  // Throws GradingError if a differential entry changes q, or the certificate fails.
  void check_gradings() const;
  // Alternating sum of graded ranks of the stored groups.
  LaurentPoly euler_of_chains() const;

 private:
  std::map<int, GradedBasisModule> groups_;
  std::map<int, SparseMatrix> differentials_;
  bool finite_ = true;
  int complete_from_ = INT_MIN;
  std::optional<Certificate> certificate_;
  std::pair<int, int> q_window_{INT_MIN, INT_MAX};
};

struct Window {
  int hmin = -4;
  int hmax = 0;
  int qmin = 0;
  int qmax = 8;
};

struct HomologyCell {
  int betti = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, divisibility order
  friend bool operator==(const HomologyCell&, const HomologyCell&) = default;
};

// Keyed by (i, j); only cells with nonzero betti or torsion are stored.
struct BigradedHomology {
  Window window;
  std::map<std::pair<int, int>, HomologyCell> cells;
  HomologyCell at(int i, int j) const;
  bool is_zero() const { return cells.empty(); }
  friend bool operator==(const BigradedHomology& a, const BigradedHomology& b) { return a.cells == b.cells; }
};

// Invariant factors (nonzero diagonal of the Smith form) of a dense matrix.
std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> a);

// Throws TruncationError if the window is not certified by c.
void check_window(const TruncatedComplex& c, const Window& w);
BigradedHomology smith_homology(const TruncatedComplex& c, const Window& w);

// Koszul sign: d(a x b) = da x b + (-1)^{|a|} a x db.
TruncatedComplex tensor(const TruncatedComplex& a, const TruncatedComplex& b);

// A degree-(0,0) map: component per degree from source group to target group.
struct ChainMap {
  std::map<int, SparseMatrix> components;
};
void check_chain_map(const TruncatedComplex& source, const TruncatedComplex& target, const ChainMap& f);
// Cone^i = source^{i+1} + target^i, d = [[-d_s, 0], [f, d_t]].
TruncatedComplex cone(const TruncatedComplex& source, const TruncatedComplex& target, const ChainMap& f);

// Sum t^i q^j betti(i,j) over the window.
struct PoincareSeries {
  std::map<std::pair<int, int>, int> coefficients;
  std::string to_string() const;
  friend bool operator==(const PoincareSeries&, const PoincareSeries&) = default;
};
PoincareSeries poincare_series(const BigradedHomology& h);
LaurentPoly euler_series(const BigradedHomology& h);

// Sign vector s with target.d = S source.d S^{-1} under a fixed generator
// bijection (same positions), when one exists.
std::optional<std::map<int, std::vector<int>>> find_sign_isomorphism(const TruncatedComplex& a,
                                                                      const TruncatedComplex& b);

}  // namespace skeinhom
