#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include <gmpxx.h>

namespace skeinhom {

// Finitely supported Laurent polynomial in q; zero coefficients are never stored.
template <class Coef>
class BasicLaurent {
 public:
  using Terms = std::map<int, Coef>;

  BasicLaurent() = default;
  BasicLaurent(Coef constant) { add(0, constant); }  // NOLINT: implicit from scalar
  static BasicLaurent monomial(int exponent, Coef c = Coef(1)) {
    BasicLaurent p;
    p.add(exponent, c);
    return p;
  }
  // [k] = q^{1-k} + q^{3-k} + ... + q^{k-1}; [0] = 0, [-k] = -[k].
  static BasicLaurent quantum_integer(int k) {
    BasicLaurent p;
    int sign = k < 0 ? -1 : 1;
    int n = k < 0 ? -k : k;
    for (int e = 1 - n; e <= n - 1; e += 2) p.add(e, Coef(sign));
    return p;
  }

  void add(int exponent, const Coef& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(exponent, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  Coef coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coef(0) : it->second;
  }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }
  const Coef& leading() const { return terms_.rbegin()->second; }
  const Coef& trailing() const { return terms_.begin()->second; }

  BasicLaurent shifted(int by) const {
    BasicLaurent p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e + by, c);
    return p;
  }
  // q -> q^{-1}
  BasicLaurent bar() const {
    BasicLaurent p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(-e, c);
    return p;
  }
  BasicLaurent& operator+=(const BasicLaurent& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  BasicLaurent& operator-=(const BasicLaurent& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  BasicLaurent& operator*=(const Coef& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
  friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) { return a -= b; }
  friend BasicLaurent operator-(BasicLaurent a) { return a *= Coef(-1); }
  friend BasicLaurent operator*(BasicLaurent a, const Coef& s) { return a *= s; }
  friend BasicLaurent operator*(const BasicLaurent& a, const BasicLaurent& b) {
    BasicLaurent p;
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) p.add(e1 + e2, c1 * c2);
    return p;
  }
  BasicLaurent& operator*=(const BasicLaurent& o) { return *this = *this * o; }
  BasicLaurent pow(int k) const {
    BasicLaurent r(Coef(1));
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }
  friend bool operator==(const BasicLaurent& a, const BasicLaurent& b) { return a.terms_ == b.terms_; }

  // Ascending exponents, e.g. "q^-1 + q", "1 - 2q^3".
  std::string to_string(char var = 'q') const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Coef mag = c < 0 ? Coef(-c) : c;
      if (first) {
        if (c < 0) out << '-';
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        out << mag;
        continue;
      }
      if (mag != 1) out << mag;
      out << var;
      if (e != 1) out << '^' << e;
    }
    return out.str();
  }

 private:
  Terms terms_;
};

using LaurentPoly = BasicLaurent<std::int64_t>;
using BigLaurent = BasicLaurent<mpz_class>;

inline BigLaurent to_big(const LaurentPoly& p) {
  BigLaurent r;
  for (const auto& [e, c] : p.terms()) r.add(e, mpz_class(static_cast<long>(c)));
  return r;
}

}  // namespace skeinhom
