#include "skeinhom/rational.hpp"

#include <stdexcept>
#include <vector>

namespace skeinhom {

namespace {

using Dense = std::vector<mpz_class>;  // ascending coefficients, no trailing zeros

Dense dense(const BigLaurent& p) {
  if (p.is_zero()) return {};
  const int lo = p.min_exponent();
  Dense d(p.max_exponent() - lo + 1, 0);
  for (const auto& [e, c] : p.terms()) d[e - lo] = c;
  return d;
}

BigLaurent sparse(const Dense& d, int shift = 0) {
  BigLaurent p;
  for (std::size_t i = 0; i < d.size(); ++i) p.add(static_cast<int>(i) + shift, d[i]);
  return p;
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

mpz_class content(const Dense& d) {
  mpz_class g = 0;
  for (const auto& c : d) g = gcd(g, c);
  return g;
}

Dense primitive(Dense d) {
  if (d.empty()) return d;
  mpz_class c = content(d);
  if (d.back() < 0) c = -c;
  for (auto& x : d) x /= c;
  return d;
}

// lc(b)^(deg a - deg b + 1) a mod b.
Dense pseudo_remainder(Dense a, const Dense& b) {
  const mpz_class lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const mpz_class top = a.back();
    const std::size_t off = a.size() - b.size();
    for (auto& x : a) x *= lead;
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= top * b[i];
    trim(a);
  }
  return a;
}

// a / b when b divides a exactly in Z[q].
Dense exact_quotient(Dense a, const Dense& b) {
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("exact_quotient: degree too small");
  Dense q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpz_class& top = a[k + b.size() - 1];
    if (top % b.back() != 0) throw std::logic_error("exact_quotient: not divisible");
    q[k] = top / b.back();
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= q[k] * b[i];
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("exact_quotient: nonzero remainder");
  return q;
}

Dense dense_gcd(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) {
    Dense g = a.empty() ? b : a;
    if (!g.empty() && g.back() < 0)
      for (auto& x : g) x = -x;
    return g;
  }
  const mpz_class c = gcd(content(a), content(b));
  Dense x = primitive(a), y = primitive(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    Dense r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive(std::move(r));
  }
  x = primitive(std::move(x));
  for (auto& v : x) v *= c;
  return x;
}

}  // namespace

BigLaurent polynomial_gcd(const BigLaurent& a, const BigLaurent& b) { return sparse(dense_gcd(dense(a), dense(b))); }

RationalFunction::RationalFunction(BigLaurent num, BigLaurent den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = BigLaurent(mpz_class(1));
    return;
  }
  const int shift = num.min_exponent() - den.min_exponent();
  Dense n = dense(num), d = dense(den);
  const Dense g = dense_gcd(n, d);
  n = exact_quotient(std::move(n), g);
  d = exact_quotient(std::move(d), g);
  if (d.back() < 0) {
    for (auto& x : n) x = -x;
    for (auto& x : d) x = -x;
  }
  num_ = sparse(n, shift);
  den_ = sparse(d);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  return *this = RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  return *this = RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  return *this = RationalFunction(num_ * o.num_, den_ * o.den_);
}
RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  return *this = RationalFunction(num_ * o.den_, den_ * o.num_);
}

std::map<int, mpz_class> RationalFunction::series(int order) const {
  std::map<int, mpz_class> out;
  if (num_.is_zero()) return out;
  // den has constant term d0; peel off one coefficient at a time.
  const mpz_class d0 = den_.coefficient(0);
  std::map<int, mpz_class> rest(num_.terms().begin(), num_.terms().end());
  for (int e = num_.min_exponent(); e <= order; ++e) {
    auto it = rest.find(e);
    if (it == rest.end() || it->second == 0) continue;
    if (it->second % d0 != 0) throw std::domain_error("series has a non-integral coefficient at q^" + std::to_string(e));
    const mpz_class c = it->second / d0;
    out[e] = c;
    for (const auto& [de, dc] : den_.terms()) rest[e + de] -= c * dc;
  }
  return out;
}

std::string RationalFunction::to_string() const {
  if (den_ == BigLaurent(mpz_class(1))) return num_.to_string();
  auto wrap = [](const BigLaurent& p) {
    std::string s = p.to_string();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + " / " + wrap(den_);
}

}  // namespace skeinhom
