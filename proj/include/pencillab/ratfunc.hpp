#pragma once

#include "pencillab/errors.hpp"
#include "pencillab/mpoly.hpp"
#include "pencillab/number_field.hpp"

#include <string>
#include <utility>

namespace pencillab {

// Reduced fraction of multivariate polynomials. Invariants: gcd(num, den) is
// constant, den is nonzero and monic under graded-lex. This makes the
// representation unique, so operator== is plain component comparison.
template <class K>
class RationalFunction {
 public:
  using MP = MultivariatePolynomial<K>;

  RationalFunction() : num_(), den_(MP(1)) {}

  static RationalFunction make(MP num, MP den) {
    MP::align(num, den);
    if (den.zero()) throw ZeroDenominator();
    if (num.zero()) return RationalFunction(MP::constant(den.nvars(), K{}), MP::constant(den.nvars(), K(1)));
    MP g = mp_gcd(num, den);
    if (!g.is_constant()) {
      num = mp_divide_exact(num, g);
      den = mp_divide_exact(den, g);
    }
    K inv = K(1) / den.leading_coeff();
    return RationalFunction(inv * num, inv * den);
  }
  // Caller guarantees gcd(num, den) is constant; only normalizes.
  static RationalFunction make_coprime(MP num, MP den) {
    MP::align(num, den);
    if (den.zero()) throw ZeroDenominator();
    if (num.zero()) return RationalFunction(MP::constant(den.nvars(), K{}), MP::constant(den.nvars(), K(1)));
    K inv = K(1) / den.leading_coeff();
    return RationalFunction(inv * num, inv * den);
  }
  static RationalFunction constant(int nvars, K c) {
    return RationalFunction(MP::constant(nvars, std::move(c)), MP::constant(nvars, K(1)));
  }
  static RationalFunction variable(int nvars, int j) {
    return RationalFunction(MP::variable(nvars, j), MP::constant(nvars, K(1)));
  }

  const MP& num() const { return num_; }
  const MP& den() const { return den_; }
  int nvars() const { return den_.nvars(); }
  bool zero() const { return num_.zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  // Degree of a reduced fraction: max of numerator and denominator degrees.
  int degree() const { return std::max(std::max(num_.total_degree(), 0), den_.total_degree()); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return make(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return make(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.zero()) throw ZeroDenominator("division by the zero function");
    return make(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction pow(int e) const {
    RationalFunction r = constant(nvars(), K(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction partial(int j) const {
    return make(num_.partial(j) * den_ - num_ * den_.partial(j), den_ * den_);
  }

 private:
  RationalFunction(MP num, MP den) : num_(std::move(num)), den_(std::move(den)) {}
  MP num_, den_;
};

using RFuncQ = RationalFunction<BigRational>;

// Members of the pencil attached to f = p/q: the finite member at lambda is
// p - lambda*q, the member at infinity is q.
inline MPolyQ pencil_member(const RFuncQ& f, const BigRational& lambda) {
  return f.num() - lambda * f.den();
}
inline MPolyQ pencil_member_infinity(const RFuncQ& f) { return f.den(); }

template <class K>
MultivariatePolynomial<K> pencil_member_at(const RationalFunction<K>& f, const K& lambda) {
  return f.num() - lambda * f.den();
}

// Reduced fraction of univariate polynomials, denominator monic.
template <class K>
class UniRationalFunction {
 public:
  using UP = UnivariatePolynomial<K>;

  UniRationalFunction() : num_(), den_(UP(1)) {}

  static UniRationalFunction make(UP num, UP den) {
    if (den.zero()) throw ZeroDenominator();
    UP g = uni_gcd(num, den);
    if (g.degree() >= 1) {
      num = uni_div_exact(num, g);
      den = uni_div_exact(den, g);
    }
    K inv = K(1) / den.leading();
    UniRationalFunction r;
    r.num_ = inv * num;
    r.den_ = inv * den;
    return r;
  }
  static UniRationalFunction constant(K c) {
    UniRationalFunction r;
    r.num_ = UP::constant(std::move(c));
    return r;
  }

  const UP& num() const { return num_; }
  const UP& den() const { return den_; }
  bool zero() const { return num_.zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  int degree() const { return std::max(std::max(num_.degree(), 0), den_.degree()); }

  friend bool operator==(const UniRationalFunction& a, const UniRationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const UniRationalFunction& a, const UniRationalFunction& b) {
    return !(a == b);
  }

 private:
  UP num_, den_;
};

using UniRFuncQ = UniRationalFunction<BigRational>;

// r(g) by homogenizing r at k = max(deg num r, deg den r):
//   N = sum a_i phi^i psi^(k-i),  D = sum b_i phi^i psi^(k-i)
// with g = phi/psi reduced. For nonconstant reduced arguments the result has
// degree (deg r)(deg g); any deviation indicates a bug upstream.
template <class K>
RationalFunction<K> compose(const UniRationalFunction<K>& r, const RationalFunction<K>& g) {
  using MP = MultivariatePolynomial<K>;
  const int k = std::max(r.num().degree(), r.den().degree());
  const MP& phi = g.num();
  const MP& psi = g.den();
  std::vector<MP> basis(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) basis[static_cast<std::size_t>(i)] = phi.pow(i) * psi.pow(k - i);
  MP N = MP::constant(g.nvars(), K{});
  MP D = N;
  for (int i = 0; i <= k; ++i) {
    K a = r.num().coeff(i);
    K b = r.den().coeff(i);
    if (!is_zero(a)) N = N + a * basis[static_cast<std::size_t>(i)];
    if (!is_zero(b)) D = D + b * basis[static_cast<std::size_t>(i)];
  }
  // N and D come out coprime: clearing psi from a Bezout identity of num r
  // and den r shows a common factor divides psi^k, while the i = k basis
  // element keeps every factor of psi outside gcd(N, D).
  RationalFunction<K> out = RationalFunction<K>::make_coprime(std::move(N), std::move(D));
  if (!r.is_constant() && !g.is_constant() && out.degree() != r.degree() * g.degree())
    throw DegreeLawViolation("deg(r o g) != deg(r) * deg(g)");
  return out;
}

// Jacobian derivation attached to f: D_f(g) = f_x g_y - f_y g_x. Defined for
// bivariate functions; it vanishes exactly on the algebraic closure of K(f).
template <class K>
RationalFunction<K> jacobian_derivation(const RationalFunction<K>& f, const RationalFunction<K>& g) {
  if (f.nvars() > 2 || g.nvars() > 2)
    throw std::invalid_argument("jacobian derivation needs bivariate functions");
  return f.partial(0) * g.partial(1) - f.partial(1) * g.partial(0);
}

template <class K>
bool algebraically_dependent(const RationalFunction<K>& f, const RationalFunction<K>& g) {
  return jacobian_derivation(f, g).zero();
}

}  // namespace pencillab
