#include "skeinhom/homalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "skeinhom/errors.hpp"
#include "skeinhom/parallel.hpp"

namespace skeinhom {

void GradedBasisModule::add(Bidegree degree, std::string label) {
  degrees_.push_back(degree);
  labels_.push_back(std::move(label));
}

LaurentPoly GradedBasisModule::graded_rank() const {
  LaurentPoly p;
  for (const auto& d : degrees_) p.add(d.q, 1);
  return p;
}

std::optional<int> GradedBasisModule::min_q() const {
  if (degrees_.empty()) return std::nullopt;
  int m = degrees_.front().q;
  for (const auto& d : degrees_) m = std::min(m, d.q);
  return m;
}

void SparseMatrix::add(int row, int col, std::int64_t value) {
  if (value == 0) return;
  entries_.push_back({row, col, value});
  normalized_ = false;
}

void SparseMatrix::normalize() {
  if (normalized_) return;
  std::sort(entries_.begin(), entries_.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return std::pair(a.row, a.col) < std::pair(b.row, b.col);
  });
  std::vector<MatrixEntry> merged;
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const MatrixEntry& e) { return e.value == 0; });
  entries_ = std::move(merged);
  normalized_ = true;
}

bool SparseMatrix::is_zero() const {
  SparseMatrix copy = *this;
  copy.normalize();
  return copy.entries_.empty();
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::logic_error("matrix shape mismatch");
  std::vector<std::vector<std::pair<int, std::int64_t>>> brows(b.rows_);
  for (const auto& e : b.entries_) brows[e.row].push_back({e.col, e.value});
  SparseMatrix c(a.rows_, b.cols_);
  for (const auto& e : a.entries_)
    for (const auto& [col, v] : brows[e.col]) c.add(e.row, col, e.value * v);
  c.normalize();
  return c;
}

SparseMatrix SparseMatrix::operator-() const {
  SparseMatrix m = *this;
  for (auto& e : m.entries_) e.value = -e.value;
  return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix c = a;
  for (const auto& e : b.entries_) c.add(e.row, e.col, e.value);
  c.normalize();
  return c;
}

bool operator==(SparseMatrix a, SparseMatrix b) {
  a.normalize();
  b.normalize();
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

namespace {
const GradedBasisModule empty_module;
}

void TruncatedComplex::set_group(int degree, GradedBasisModule module) { groups_[degree] = std::move(module); }

void TruncatedComplex::set_differential(int degree, SparseMatrix d) {
  d.normalize();
  differentials_[degree] = std::move(d);
}

const GradedBasisModule& TruncatedComplex::group(int degree) const {
  auto it = groups_.find(degree);
  return it == groups_.end() ? empty_module : it->second;
}

SparseMatrix TruncatedComplex::differential(int degree) const {
  auto it = differentials_.find(degree);
  if (it != differentials_.end()) return it->second;
  return SparseMatrix(group(degree + 1).size(), group(degree).size());
}

std::vector<int> TruncatedComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [d, g] : groups_)
    if (g.size() > 0) out.push_back(d);
  return out;
}

int TruncatedComplex::hmin() const { return groups_.empty() ? 0 : groups_.begin()->first; }
int TruncatedComplex::hmax() const { return groups_.empty() ? 0 : groups_.rbegin()->first; }

void TruncatedComplex::check_d_squared() const {
  for (const auto& [k, d] : differentials_) {
    auto next = differentials_.find(k + 1);
    if (next == differentials_.end()) continue;
    SparseMatrix sq = next->second * d;
    if (!sq.entries().empty()) {
      const auto& e = sq.entries().front();
      throw ChainMapError("d^2 != 0 from degree " + std::to_string(k) + ": entry (" + std::to_string(e.row) + "," +
                          std::to_string(e.col) + ") = " + std::to_string(e.value));
    }
  }
}

void TruncatedComplex::check_gradings() const {
  for (const auto& [k, d] : differentials_) {
    const auto& src = group(k);
    const auto& tgt = group(k + 1);
    if (d.cols() != src.size() || d.rows() != tgt.size())
      throw GradingError("differential at degree " + std::to_string(k) + " has the wrong shape");
    for (const auto& e : d.entries())
      if (src.degree(e.col).q != tgt.degree(e.row).q)
        throw GradingError("differential at degree " + std::to_string(k) + " changes quantum degree");
  }
  if (certificate_) {
    for (const auto& [k, g] : groups_) {
      if (k > 0) continue;
      auto m = g.min_q();
      if (m && *m < certificate_->bound(-k))
        throw GradingError("certificate violated in degree " + std::to_string(k) + ": q = " + std::to_string(*m) +
                           " < " + std::to_string(certificate_->bound(-k)));
    }
  }
}

LaurentPoly TruncatedComplex::euler_of_chains() const {
  LaurentPoly p;
  for (const auto& [k, g] : groups_) {
    LaurentPoly r = g.graded_rank();
    p += (k % 2 == 0) ? r : -r;
  }
  return p;
}

HomologyCell BigradedHomology::at(int i, int j) const {
  auto it = cells.find({i, j});
  return it == cells.end() ? HomologyCell{} : it->second;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}

}  // namespace

std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<std::int64_t> diag;
  int t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    int pr = -1, pc = -1;
    std::int64_t best = 0;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c)
        if (a[r][c] != 0 && (best == 0 || std::llabs(a[r][c]) < best)) {
          best = std::llabs(a[r][c]);
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      const std::int64_t p = a[t][t];
      for (int r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        std::int64_t f = a[r][t] / p;
        for (int c = t; c < cols; ++c) a[r][c] = checked_sub(a[r][c], checked_mul(f, a[t][c]));
        if (a[r][t] != 0) clean = false;
      }
      for (int c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        std::int64_t f = a[t][c] / p;
        for (int r = t; r < rows; ++r) a[r][c] = checked_sub(a[r][c], checked_mul(f, a[r][t]));
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t to the pivot.
        int br = t, bc = t;
        std::int64_t b = std::llabs(a[t][t]);
        for (int r = t + 1; r < rows; ++r)
          if (a[r][t] != 0 && std::llabs(a[r][t]) < b) b = std::llabs(a[r][t]), br = r, bc = t;
        for (int c = t + 1; c < cols; ++c)
          if (a[t][c] != 0 && std::llabs(a[t][c]) < b) b = std::llabs(a[t][c]), br = t, bc = c;
        std::swap(a[t], a[br]);
        for (auto& row : a) std::swap(row[t], row[bc]);
      }
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  // Enforce divisibility by gcd/lcm exchanges.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      std::int64_t g = std::gcd(diag[i], diag[j]);
      std::int64_t l = checked_mul(diag[i] / g, diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

void check_window(const TruncatedComplex& c, const Window& w) {
  if (w.hmin > w.hmax || w.qmin > w.qmax) throw TruncationError("empty or inverted window");
  auto [q0, q1] = c.q_window();
  if (w.qmin < q0 || w.qmax > q1)
    throw TruncationError("quantum window [" + std::to_string(w.qmin) + "," + std::to_string(w.qmax) +
                          "] exceeds the assembled range [" + std::to_string(q0) + "," + std::to_string(q1) + "]");
  if (c.finite()) return;
  for (int i = w.hmin; i <= w.hmax; ++i) {
    if (i > c.complete_from()) continue;
    const auto& cert = c.certificate();
    if (!cert || cert->bound(-i) <= w.qmax)
      throw TruncationError("homological degree " + std::to_string(i) + " is not certified (complete from " +
                            std::to_string(c.complete_from()) + ")");
  }
}

namespace {

// Dense block of d restricted to generators of quantum degree j.
std::vector<std::vector<std::int64_t>> block(const SparseMatrix& d, const std::vector<int>& row_index,
                                             const std::vector<int>& col_index, int nrows, int ncols) {
  std::vector<std::vector<std::int64_t>> m(nrows, std::vector<std::int64_t>(ncols, 0));
  for (const auto& e : d.entries()) {
    int r = row_index[e.row], c = col_index[e.col];
    if (r >= 0 && c >= 0) m[r][c] += e.value;
  }
  return m;
}

}  // namespace

BigradedHomology smith_homology(const TruncatedComplex& c, const Window& w) {
  check_window(c, w);
  const int nq = w.qmax - w.qmin + 1;
  std::vector<std::map<std::pair<int, int>, HomologyCell>> per_q(nq);
  parallel_for(nq, [&](int qi) {
    const int j = w.qmin + qi;
    // Local index of each generator within its q = j slice, -1 otherwise.
    std::map<int, std::vector<int>> local;
    std::map<int, int> dim;
    for (int i = w.hmin - 1; i <= w.hmax + 1; ++i) {
      const auto& g = c.group(i);
      std::vector<int> idx(g.size(), -1);
      int n = 0;
      for (int k = 0; k < g.size(); ++k)
        if (g.degree(k).q == j) idx[k] = n++;
      local[i] = std::move(idx);
      dim[i] = n;
    }
    std::map<int, std::vector<std::int64_t>> inv;
    for (int i = w.hmin - 1; i <= w.hmax; ++i) {
      if (dim[i] == 0 || dim[i + 1] == 0) {
        inv[i] = {};
        continue;
      }
      inv[i] = smith_invariants(block(c.differential(i), local[i + 1], local[i], dim[i + 1], dim[i]));
    }
    for (int i = w.hmin; i <= w.hmax; ++i) {
      HomologyCell cell;
      cell.betti = dim[i] - static_cast<int>(inv[i].size()) - static_cast<int>(inv[i - 1].size());
      for (auto f : inv[i - 1])
        if (f > 1) cell.torsion.push_back(f);
      if (cell.betti != 0 || !cell.torsion.empty()) per_q[qi][{i, j}] = cell;
    }
  });
  BigradedHomology h;
  h.window = w;
  for (auto& m : per_q) h.cells.merge(m);
  return h;
}

TruncatedComplex tensor(const TruncatedComplex& a, const TruncatedComplex& b) {
  auto full = std::pair(INT_MIN, INT_MAX);
  if (a.q_window() != full || b.q_window() != full)
    throw TruncationError("tensor needs complexes assembled over all quantum degrees");
  TruncatedComplex t;
  auto da = a.degrees(), db = b.degrees();
  std::set<int> total;
  for (int i : da)
    for (int k : db) total.insert(i + k);
  // Offsets of block (i, k-i) inside the total group.
  std::map<int, std::map<int, int>> offset;
  for (int n : total) {
    GradedBasisModule g;
    for (int i : da) {
      int k = n - i;
      const auto& gb = b.group(k);
      if (gb.size() == 0) continue;
      const auto& ga = a.group(i);
      offset[n][i] = g.size();
      for (int x = 0; x < ga.size(); ++x)
        for (int y = 0; y < gb.size(); ++y)
          g.add(ga.degree(x) + gb.degree(y), ga.label(x) + "|" + gb.label(y));
    }
    t.set_group(n, std::move(g));
  }
  for (int n : total) {
    SparseMatrix d(t.group(n + 1).size(), t.group(n).size());
    for (const auto& [i, off] : offset[n]) {
      const int k = n - i;
      const int nb = b.group(k).size();
      // da x id
      if (offset[n + 1].count(i + 1)) {
        const int toff = offset[n + 1][i + 1];
        for (const auto& e : a.differential(i).entries())
          for (int y = 0; y < nb; ++y) d.add(toff + e.row * nb + y, off + e.col * nb + y, e.value);
      }
      // (-1)^i id x db
      if (offset[n + 1].count(i)) {
        const int toff = offset[n + 1][i];
        const int na = a.group(i).size();
        const int nb1 = b.group(k + 1).size();
        const std::int64_t s = (i % 2 == 0) ? 1 : -1;
        for (int x = 0; x < na; ++x)
          for (const auto& e : b.differential(k).entries()) d.add(toff + x * nb1 + e.row, off + x * nb + e.col, s * e.value);
      }
    }
    t.set_differential(n, std::move(d));
  }
  t.set_finite(a.finite() && b.finite());
  if (!t.finite()) {
    int ca = a.finite() ? INT_MIN / 4 : a.complete_from();
    int cb = b.finite() ? INT_MIN / 4 : b.complete_from();
    t.set_complete_from(std::max(ca + b.hmax(), cb + a.hmax()));
  }
  if (a.certificate() && b.certificate() && a.hmax() <= 0 && b.hmax() <= 0) {
    t.set_certificate({std::min(a.certificate()->slope, b.certificate()->slope),
                       a.certificate()->intercept + b.certificate()->intercept});
  }
  return t;
}

void check_chain_map(const TruncatedComplex& s, const TruncatedComplex& t, const ChainMap& f) {
  auto comp = [&](int k) {
    auto it = f.components.find(k);
    return it == f.components.end() ? SparseMatrix(t.group(k).size(), s.group(k).size()) : it->second;
  };
  std::set<int> ks;
  for (int k : s.degrees()) ks.insert(k);
  for (int k : ks) {
    // Skip the square leaving the truncated bottom of the source.
    if (!s.finite() && k < s.complete_from()) continue;
    SparseMatrix lhs = t.differential(k) * comp(k);
    SparseMatrix rhs = comp(k + 1) * s.differential(k);
    SparseMatrix diff = lhs + (-rhs);
    if (!diff.entries().empty()) {
      const auto& e = diff.entries().front();
      throw ChainMapError("map does not commute with d at degree " + std::to_string(k) + ", entry (" +
                          std::to_string(e.row) + "," + std::to_string(e.col) + ")");
    }
    const auto& fs = comp(k);
    for (const auto& e : fs.entries())
      if (s.group(k).degree(e.col).q != t.group(k).degree(e.row).q)
        throw ChainMapError("map changes quantum degree at degree " + std::to_string(k));
  }
}

TruncatedComplex cone(const TruncatedComplex& s, const TruncatedComplex& t, const ChainMap& f) {
  check_chain_map(s, t, f);
  if (s.q_window() != t.q_window()) throw TruncationError("cone of complexes with different quantum windows");
  TruncatedComplex c;
  std::set<int> ks;
  for (int k : s.degrees()) ks.insert(k - 1);
  for (int k : t.degrees()) ks.insert(k);
  for (int k : ks) {
    GradedBasisModule g;
    const auto& gs = s.group(k + 1);
    for (int x = 0; x < gs.size(); ++x) g.add({k, gs.degree(x).q}, "s:" + gs.label(x));
    const auto& gt = t.group(k);
    for (int x = 0; x < gt.size(); ++x) g.add(gt.degree(x), "t:" + gt.label(x));
    c.set_group(k, std::move(g));
  }
  for (int k : ks) {
    SparseMatrix d(c.group(k + 1).size(), c.group(k).size());
    const int ns_src = s.group(k + 1).size();
    const int ns_tgt = s.group(k + 2).size();
    for (const auto& e : s.differential(k + 1).entries()) d.add(e.row, e.col, -e.value);
    auto it = f.components.find(k + 1);
    if (it != f.components.end())
      for (const auto& e : it->second.entries()) d.add(ns_tgt + e.row, e.col, e.value);
    for (const auto& e : t.differential(k).entries()) d.add(ns_tgt + e.row, ns_src + e.col, e.value);
    c.set_differential(k, std::move(d));
  }
  c.set_finite(s.finite() && t.finite());
  if (!c.finite()) {
    int cs = s.finite() ? INT_MIN / 4 : s.complete_from() - 1;
    int ct = t.finite() ? INT_MIN / 4 : t.complete_from();
    c.set_complete_from(std::max(cs, ct));
  }
  auto [q0, q1] = s.q_window();
  c.set_q_window(q0, q1);
  const auto& cs = s.certificate();
  const auto& ct = t.certificate();
  if (cs && ct) {
    c.set_certificate({std::min(cs->slope, ct->slope), std::min(cs->intercept - cs->slope, ct->intercept)});
  }
  return c;
}

std::string PoincareSeries::to_string() const {
  if (coefficients.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [ij, c] : coefficients) {
    auto [i, j] = ij;
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    int mag = std::abs(c);
    if (mag != 1 || (i == 0 && j == 0)) out << mag;
    if (i != 0) out << "t" << (i == 1 ? "" : "^" + std::to_string(i));
    if (j != 0) out << "q" << (j == 1 ? "" : "^" + std::to_string(j));
  }
  return out.str();
}

PoincareSeries poincare_series(const BigradedHomology& h) {
  PoincareSeries p;
  for (const auto& [ij, cell] : h.cells)
    if (cell.betti != 0) p.coefficients[ij] = cell.betti;
  return p;
}

LaurentPoly euler_series(const BigradedHomology& h) {
  LaurentPoly p;
  for (const auto& [ij, cell] : h.cells) p.add(ij.second, (ij.first % 2 == 0) ? cell.betti : -cell.betti);
  return p;
}

std::optional<std::map<int, std::vector<int>>> find_sign_isomorphism(const TruncatedComplex& a,
                                                                      const TruncatedComplex& b) {
  std::set<int> ks;
  for (int k : a.degrees()) ks.insert(k);
  for (int k : b.degrees()) ks.insert(k);
  std::map<int, std::vector<int>> sign;
  for (int k : ks) {
    if (a.group(k).size() != b.group(k).size()) return std::nullopt;
    sign[k].assign(a.group(k).size(), 0);
  }
  // Constraint graph: node (k, x), edge with parity.
  std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, int>>> edges;
  for (int k : ks) {
    SparseMatrix da = a.differential(k), db = b.differential(k);
    da.normalize();
    db.normalize();
    if (da.entries().size() != db.entries().size()) return std::nullopt;
    for (std::size_t e = 0; e < da.entries().size(); ++e) {
      const auto& x = da.entries()[e];
      const auto& y = db.entries()[e];
      if (x.row != y.row || x.col != y.col) return std::nullopt;
      int parity;
      if (x.value == y.value) {
        parity = 1;
      } else if (x.value == -y.value) {
        parity = -1;
      } else {
        return std::nullopt;
      }
      edges[{k, x.col}].push_back({{k + 1, x.row}, parity});
      edges[{k + 1, x.row}].push_back({{k, x.col}, parity});
    }
  }
  for (int k : ks) {
    for (std::size_t x = 0; x < sign[k].size(); ++x) {
      if (sign[k][x] != 0) continue;
      sign[k][x] = 1;
      std::vector<std::pair<int, int>> stack{{k, static_cast<int>(x)}};
      while (!stack.empty()) {
        auto node = stack.back();
        stack.pop_back();
        int s = sign[node.first][node.second];
        for (const auto& [other, parity] : edges[node]) {
          int& t = sign[other.first][other.second];
          if (t == 0) {
            t = s * parity;
            stack.push_back(other);
          } else if (t != s * parity) {
            return std::nullopt;
          }
        }
      }
    }
  }
  return sign;
}

}  // namespace skeinhom
