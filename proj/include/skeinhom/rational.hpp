#pragma once

#include <map>
#include <string>

#include <gmpxx.h>

#include "skeinhom/laurent.hpp"

namespace skeinhom {

// num/den in lowest terms: den is a polynomial with nonzero constant term and
// positive leading coefficient, num carries any power of q.
class RationalFunction {
 public:
  RationalFunction() : den_(mpz_class(1)) {}
  RationalFunction(long c) : num_(mpz_class(c)), den_(mpz_class(1)) {}  // NOLINT: implicit from scalar
  RationalFunction(BigLaurent num, BigLaurent den = BigLaurent(mpz_class(1)));

  static RationalFunction quantum_integer(int k) { return {BigLaurent::quantum_integer(k)}; }

  const BigLaurent& numerator() const { return num_; }
  const BigLaurent& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator-(const RationalFunction& a) { return {-a.num_, a.den_}; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Expansion in ascending powers of q through q^order. Throws std::domain_error
  // when a coefficient is not an integer.
  std::map<int, mpz_class> series(int order) const;
  // "num / den", or just "num" when den = 1.
  std::string to_string() const;

 private:
  BigLaurent num_, den_;
};

// Greatest common divisor in Z[q] of two polynomials, positive leading coefficient.
BigLaurent polynomial_gcd(const BigLaurent& a, const BigLaurent& b);

}  // namespace skeinhom
