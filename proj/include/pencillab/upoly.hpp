#pragma once

#include "pencillab/rational.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pencillab {

// Dense univariate polynomial, coefficients stored from degree 0 upward.
// Trailing zeros are never stored; the zero polynomial has degree -1.
// K needs ring ops, K{} == 0, K(1) == 1 and a free is_zero(K). Division,
// gcd and friends additionally need K to be a field.
template <class K>
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(long n) {
    if (n != 0) c_.push_back(K(n));
  }
  explicit UnivariatePolynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UnivariatePolynomial constant(K a) {
    UnivariatePolynomial p;
    p.c_.push_back(std::move(a));
    p.trim();
    return p;
  }
  static UnivariatePolynomial monomial(int k, K a) {
    UnivariatePolynomial p;
    if (!is_zero(a)) {
      p.c_.assign(static_cast<std::size_t>(k) + 1, K{});
      p.c_.back() = std::move(a);
    }
    return p;
  }
  static UnivariatePolynomial variable() { return monomial(1, K(1)); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return K{};
    return c_[static_cast<std::size_t>(i)];
  }
  const K& leading() const {
    assert(!c_.empty());
    return c_.back();
  }
  const std::vector<K>& coeffs() const { return c_; }

  UnivariatePolynomial operator-() const {
    UnivariatePolynomial r = *this;
    for (K& a : r.c_) a = -a;
    return r;
  }

  friend UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K{});
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < a.c_.size()) c[i] = c[i] + a.c_[i];
      if (i < b.c_.size()) c[i] = c[i] + b.c_[i];
    }
    return UnivariatePolynomial(std::move(c));
  }
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    return a + (-b);
  }
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    if (a.zero() || b.zero()) return UnivariatePolynomial{};
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, K{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return UnivariatePolynomial(std::move(c));
  }
  friend UnivariatePolynomial operator*(const K& s, const UnivariatePolynomial& p) {
    UnivariatePolynomial r = p;
    for (K& a : r.c_) a = s * a;
    r.trim();
    return r;
  }

  friend bool operator==(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    return !(a == b);
  }

  UnivariatePolynomial derivative() const {
    if (c_.size() <= 1) return UnivariatePolynomial{};
    std::vector<K> c(c_.size() - 1, K{});
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = K(static_cast<long>(i)) * c_[i];
    return UnivariatePolynomial(std::move(c));
  }

  template <class V>
  V eval(const V& x) const {
    V acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }

  // Multiply by t^k.
  UnivariatePolynomial shifted(int k) const {
    if (zero()) return *this;
    std::vector<K> c(c_.size() + static_cast<std::size_t>(k), K{});
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + static_cast<std::size_t>(k)] = c_[i];
    return UnivariatePolynomial(std::move(c));
  }

 private:
  std::vector<K> c_;
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
};

using UPolyQ = UnivariatePolynomial<BigRational>;

template <class K>
bool is_zero(const UnivariatePolynomial<K>& p) {
  return p.zero();
}

template <class K>
UnivariatePolynomial<K> uni_monic(const UnivariatePolynomial<K>& p) {
  if (p.zero()) return p;
  K inv = K(1) / p.leading();
  return inv * p;
}

// Field division with remainder: a = q*b + r, deg r < deg b.
template <class K>
std::pair<UnivariatePolynomial<K>, UnivariatePolynomial<K>> uni_divmod(
    const UnivariatePolynomial<K>& a, const UnivariatePolynomial<K>& b) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  std::vector<K> rem(a.coeffs());
  const int db = b.degree();
  if (a.degree() < db) return {UnivariatePolynomial<K>{}, a};
  std::vector<K> quot(static_cast<std::size_t>(a.degree() - db) + 1, K{});
  const K lead_inv = K(1) / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    K c = rem[static_cast<std::size_t>(i)];
    if (is_zero(c)) continue;
    K q = c * lead_inv;
    quot[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] = rem[static_cast<std::size_t>(i - db + j)] - q * b.coeff(j);
  }
  return {UnivariatePolynomial<K>(std::move(quot)), UnivariatePolynomial<K>(std::move(rem))};
}

template <class K>
UnivariatePolynomial<K> uni_div_exact(const UnivariatePolynomial<K>& a, const UnivariatePolynomial<K>& b) {
  auto [q, r] = uni_divmod(a, b);
  if (!r.zero()) throw std::logic_error("uni_div_exact: division not exact");
  return q;
}

namespace detail {

// Integer image of a rational polynomial: primitive, positive leading coeff.
inline std::vector<BigInt> zprimitive(const UPolyQ& p) {
  std::vector<BigInt> z;
  if (p.zero()) return z;
  BigInt l = 1;
  for (const BigRational& c : p.coeffs()) l = int_lcm(l, den(c));
  z.reserve(p.coeffs().size());
  BigInt g = 0;
  for (const BigRational& c : p.coeffs()) {
    z.push_back(num(c) * (l / den(c)));
    g = int_gcd(g, z.back());
  }
  if (z.back() < 0) g = -g;
  for (BigInt& c : z) c /= g;
  return z;
}

inline UPolyQ from_zpoly(const std::vector<BigInt>& z) {
  std::vector<BigRational> c;
  c.reserve(z.size());
  for (const BigInt& a : z) c.emplace_back(a);
  return UPolyQ(std::move(c));
}

inline int zdeg(const std::vector<BigInt>& z) { return static_cast<int>(z.size()) - 1; }

inline void ztrim(std::vector<BigInt>& z) {
  while (!z.empty() && z.back() == 0) z.pop_back();
}

inline std::vector<BigInt> zprim_part(std::vector<BigInt> z) {
  BigInt g = 0;
  for (const BigInt& c : z) g = int_gcd(g, c);
  if (g == 0) return z;
  if (z.back() < 0) g = -g;
  for (BigInt& c : z) c /= g;
  return z;
}

// Pseudo-remainder of a by b over Z (lc(b)^(da-db+1) * a mod b).
inline std::vector<BigInt> zprem(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const int db = zdeg(b);
  const BigInt lb = b.back();
  while (zdeg(a) >= db) {
    const int da = zdeg(a);
    const BigInt la = a.back();
    for (BigInt& c : a) c *= lb;
    for (int j = 0; j <= db; ++j)
      a[static_cast<std::size_t>(da - db + j)] -= la * b[static_cast<std::size_t>(j)];
    ztrim(a);
    if (a.empty()) break;
  }
  return a;
}

// Primitive PRS gcd over Z; coefficient growth stays tame at these sizes.
inline std::vector<BigInt> zgcd(std::vector<BigInt> a, std::vector<BigInt> b) {
  a = zprim_part(std::move(a));
  b = zprim_part(std::move(b));
  if (zdeg(a) < zdeg(b)) std::swap(a, b);
  while (!b.empty()) {
    std::vector<BigInt> r = zprim_part(zprem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

// Monic gcd. Rational coefficients route through a primitive PRS over Z;
// other coefficient fields use the plain Euclidean loop.
template <class K>
UnivariatePolynomial<K> uni_gcd(UnivariatePolynomial<K> a, UnivariatePolynomial<K> b) {
  while (!b.zero()) {
    auto r = uni_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return uni_monic(a);
}

inline UPolyQ uni_gcd(const UPolyQ& a, const UPolyQ& b) {
  if (a.zero()) return uni_monic(b);
  if (b.zero()) return uni_monic(a);
  return uni_monic(detail::from_zpoly(detail::zgcd(detail::zprimitive(a), detail::zprimitive(b))));
}

template <class K>
UnivariatePolynomial<K> uni_squarefree_part(const UnivariatePolynomial<K>& p) {
  if (p.degree() <= 0) return uni_monic(p);
  return uni_monic(uni_div_exact(p, uni_gcd(p, p.derivative())));
}

// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <class K>
struct ExtGcd {
  UnivariatePolynomial<K> g, u, v;
};

template <class K>
ExtGcd<K> uni_ext_gcd(const UnivariatePolynomial<K>& a, const UnivariatePolynomial<K>& b) {
  using P = UnivariatePolynomial<K>;
  P r0 = a, r1 = b;
  P u0 = P::constant(K(1)), u1{};
  P v0{}, v1 = P::constant(K(1));
  while (!r1.zero()) {
    auto [q, r] = uni_divmod(r0, r1);
    P u2 = u0 - q * u1;
    P v2 = v0 - q * v1;
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (r0.zero()) return {r0, u0, v0};
  K inv = K(1) / r0.leading();
  return {inv * r0, inv * u0, inv * v0};
}

// Text form, descending powers, compact: "t^2+t+1", "2*t^3-1/2*t", "-t+3".
inline std::string uni_to_string(const UPolyQ& p, const std::string& var) {
  if (p.zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    BigRational c = p.coeff(i);
    if (is_zero(c)) continue;
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    BigRational a = neg ? BigRational(-c) : c;
    const bool unit = (a == 1);
    if (i == 0) {
      out += to_string(a);
    } else {
      if (!unit) {
        out += to_string(a);
        out += "*";
      }
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace detail {

// Divisors of |n| when |n| factors over primes <= 10^6 into a modest divisor
// set; empty result means "too expensive, caller falls back to small trials".
inline std::vector<BigInt> bounded_divisors(BigInt n, std::size_t cap = 4096) {
  std::vector<BigInt> divs;
  n = int_abs(n);
  if (n == 0 || n > BigInt("1000000000000000000")) return divs;
  std::vector<std::pair<BigInt, int>> fac;
  for (long long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
    if (BigInt(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      fac.emplace_back(BigInt(p), e);
    }
  }
  // Leftover n is prime or a product of primes beyond the sieve bound; using
  // it whole can only miss divisors, never invent one.
  if (n > 1) fac.emplace_back(n, 1);
  divs.push_back(BigInt(1));
  for (auto& [p, e] : fac) {
    std::size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) {
        divs.push_back(divs[i] * pk);
        if (divs.size() > cap) return {};
      }
    }
  }
  return divs;
}

}  // namespace detail

// Rational roots of p (squarefree or not; each root reported once), found by
// the rational root test with a bounded divisor search plus a direct sweep of
// small numerators/denominators. Returns the roots it found and the cofactor
// of p after dividing out (t - r) for each; a complete answer is not promised
// when coefficients are huge, callers treat this as best-effort refinement.
struct RationalRoots {
  std::vector<BigRational> roots;
  UPolyQ cofactor;
};

inline RationalRoots uni_rational_roots(UPolyQ p) {
  RationalRoots out;
  if (p.degree() <= 0) {
    out.cofactor = p;
    return out;
  }
  const UPolyQ t = UPolyQ::variable();
  auto try_root = [&](const BigRational& r) {
    bool hit = false;
    while (p.degree() >= 1 && is_zero(p.eval(r))) {
      hit = true;
      p = uni_div_exact(p, t - UPolyQ::constant(r));
    }
    if (hit) out.roots.push_back(r);
  };
  try_root(BigRational(0));
  if (p.degree() >= 1) {
    std::vector<BigInt> z = detail::zprimitive(p);
    std::vector<BigInt> nums = detail::bounded_divisors(z.front());
    std::vector<BigInt> dens = detail::bounded_divisors(z.back());
    if (!nums.empty() && !dens.empty() && nums.size() * dens.size() <= 20000) {
      for (const BigInt& u : nums)
        for (const BigInt& v : dens) {
          if (p.degree() < 1) break;
          try_root(BigRational(u, v));
          try_root(BigRational(-u, v));
        }
    } else {
      for (long uu = 1; uu <= 50 && p.degree() >= 1; ++uu)
        for (long vv = 1; vv <= 50; ++vv) {
          if (int_gcd(BigInt(uu), BigInt(vv)) != 1) continue;
          try_root(BigRational(uu, vv));
          try_root(BigRational(-uu, vv));
        }
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.cofactor = p;
  return out;
}

// Unique polynomial of degree < n through n distinct nodes, by Newton's
// divided differences.
inline UPolyQ uni_interpolate(const std::vector<BigRational>& xs,
                              const std::vector<BigRational>& ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw std::invalid_argument("uni_interpolate: bad node count");
  std::vector<BigRational> dd = ys;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  UPolyQ P = UPolyQ::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    P = P * (UPolyQ::variable() - UPolyQ::constant(xs[i])) + UPolyQ::constant(dd[i]);
  return P;
}

}  // namespace pencillab
