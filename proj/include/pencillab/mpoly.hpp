#pragma once

#include "pencillab/linalg.hpp"
#include "pencillab/rational.hpp"
#include "pencillab/upoly.hpp"

#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace pencillab {

// Graded lexicographic order, earlier variables ranked higher. Used as the
// term order everywhere: leading terms, canonical printing, normalization.
struct GrlexGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    const int sa = std::accumulate(a.begin(), a.end(), 0);
    const int sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa > sb;
    return a > b;
  }
};

// Sparse multivariate polynomial over K. Terms live in a map keyed by
// exponent vectors of length nvars(); zero coefficients are never stored.
// A polynomial with nvars() == 0 is a plain constant; binary ops pad the
// side with fewer variables, so constants mix freely with anything.
template <class K>
class MultivariatePolynomial {
 public:
  using Terms = std::map<std::vector<int>, K, GrlexGreater>;

  MultivariatePolynomial() : nvars_(0) {}
  explicit MultivariatePolynomial(long c) : nvars_(0) {
    if (c != 0) t_.emplace(std::vector<int>{}, K(c));
  }
  explicit MultivariatePolynomial(K c) : nvars_(0) {
    if (!is_zero(c)) t_.emplace(std::vector<int>{}, std::move(c));
  }

  static MultivariatePolynomial constant(int nvars, K c) {
    MultivariatePolynomial p;
    p.nvars_ = nvars;
    if (!is_zero(c)) p.t_.emplace(std::vector<int>(static_cast<std::size_t>(nvars), 0), std::move(c));
    return p;
  }
  static MultivariatePolynomial variable(int nvars, int j) {
    assert(j >= 0 && j < nvars);
    MultivariatePolynomial p;
    p.nvars_ = nvars;
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(j)] = 1;
    p.t_.emplace(std::move(e), K(1));
    return p;
  }

  int nvars() const { return nvars_; }
  bool zero() const { return t_.empty(); }
  const Terms& terms() const { return t_; }

  bool is_constant() const {
    if (t_.empty()) return true;
    if (t_.size() > 1) return false;
    const auto& e = t_.begin()->first;
    for (int x : e)
      if (x != 0) return false;
    return true;
  }
  K constant_value() const {
    if (t_.empty()) return K{};
    assert(is_constant());
    return t_.begin()->second;
  }

  int total_degree() const {
    if (t_.empty()) return -1;
    const auto& e = t_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
  }
  int degree_in(int j) const {
    if (j >= nvars_) return 0;
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e[static_cast<std::size_t>(j)]);
    return d;
  }

  const K& leading_coeff() const {
    assert(!t_.empty());
    return t_.begin()->second;
  }
  const std::vector<int>& leading_exponent() const {
    assert(!t_.empty());
    return t_.begin()->first;
  }

  K coeff(const std::vector<int>& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? K{} : it->second;
  }

  void add_term(std::vector<int> e, K c) {
    assert(static_cast<int>(e.size()) == nvars_);
    if (is_zero(c)) return;
    auto [it, inserted] = t_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero(it->second)) t_.erase(it);
    }
  }

  MultivariatePolynomial pad_vars(int n) const {
    if (n == nvars_) return *this;
    assert(n > nvars_);
    MultivariatePolynomial r;
    r.nvars_ = n;
    for (const auto& [e, c] : t_) {
      std::vector<int> e2 = e;
      e2.resize(static_cast<std::size_t>(n), 0);
      r.t_.emplace(std::move(e2), c);
    }
    return r;
  }
  static void align(MultivariatePolynomial& a, MultivariatePolynomial& b) {
    if (a.nvars_ == b.nvars_) return;
    if (a.nvars_ < b.nvars_)
      a = a.pad_vars(b.nvars_);
    else
      b = b.pad_vars(a.nvars_);
  }

  MultivariatePolynomial operator-() const {
    MultivariatePolynomial r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }

  friend MultivariatePolynomial operator+(MultivariatePolynomial a, MultivariatePolynomial b) {
    align(a, b);
    for (auto& [e, c] : b.t_) {
      auto [it, inserted] = a.t_.try_emplace(e, c);
      if (!inserted) {
        it->second = it->second + c;
        if (is_zero(it->second)) a.t_.erase(it);
      }
    }
    return a;
  }
  friend MultivariatePolynomial operator-(MultivariatePolynomial a, const MultivariatePolynomial& b) {
    return std::move(a) + (-b);
  }
  friend MultivariatePolynomial operator*(MultivariatePolynomial a, MultivariatePolynomial b) {
    align(a, b);
    MultivariatePolynomial r;
    r.nvars_ = a.nvars_;
    if (a.zero() || b.zero()) return r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        std::vector<int> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        K c = ca * cb;
        if (is_zero(c)) continue;
        auto [it, inserted] = r.t_.try_emplace(std::move(e), c);
        if (!inserted) {
          it->second = it->second + c;
          if (is_zero(it->second)) r.t_.erase(it);
        }
      }
    return r;
  }
  friend MultivariatePolynomial operator*(const K& s, MultivariatePolynomial p) {
    if (is_zero(s)) return MultivariatePolynomial::constant(p.nvars_, K{});
    for (auto it = p.t_.begin(); it != p.t_.end();) {
      it->second = s * it->second;
      if (is_zero(it->second))
        it = p.t_.erase(it);
      else
        ++it;
    }
    return p;
  }

  MultivariatePolynomial pow(int e) const {
    assert(e >= 0);
    MultivariatePolynomial r = constant(nvars_, K(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(MultivariatePolynomial a, MultivariatePolynomial b) {
    align(a, b);
    return a.t_ == b.t_;
  }
  friend bool operator!=(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
    return !(a == b);
  }

  MultivariatePolynomial partial(int j) const {
    MultivariatePolynomial r;
    r.nvars_ = nvars_;
    if (j >= nvars_) return r;
    for (const auto& [e, c] : t_) {
      const int k = e[static_cast<std::size_t>(j)];
      if (k == 0) continue;
      std::vector<int> e2 = e;
      e2[static_cast<std::size_t>(j)] = k - 1;
      r.add_term(std::move(e2), K(static_cast<long>(k)) * c);
    }
    return r;
  }

  std::vector<int> vars_present() const {
    std::vector<int> out;
    for (int j = 0; j < nvars_; ++j)
      if (degree_in(j) > 0) out.push_back(j);
    return out;
  }

  // Coefficient list with respect to variable j, index = exponent of j.
  // Entries keep the same nvars with the j slot zeroed.
  std::vector<MultivariatePolynomial> coeffs_in(int j) const {
    std::vector<MultivariatePolynomial> out(static_cast<std::size_t>(degree_in(j)) + 1,
                                            constant(nvars_, K{}));
    if (zero()) return {};
    for (const auto& [e, c] : t_) {
      std::vector<int> e2 = e;
      const int k = e2[static_cast<std::size_t>(j)];
      e2[static_cast<std::size_t>(j)] = 0;
      out[static_cast<std::size_t>(k)].add_term(std::move(e2), c);
    }
    return out;
  }
  static MultivariatePolynomial from_coeffs_in(int j, int nvars,
                                               const std::vector<MultivariatePolynomial>& cs) {
    MultivariatePolynomial r = constant(nvars, K{});
    for (std::size_t k = 0; k < cs.size(); ++k) {
      MultivariatePolynomial c = cs[k].pad_vars(nvars);
      for (const auto& [e, v] : c.t_) {
        std::vector<int> e2 = e;
        e2[static_cast<std::size_t>(j)] += static_cast<int>(k);
        r.add_term(std::move(e2), v);
      }
    }
    return r;
  }

  UnivariatePolynomial<K> to_univariate(int j) const {
    std::vector<K> c(static_cast<std::size_t>(degree_in(j)) + 1, K{});
    for (const auto& [e, v] : t_) {
      for (int i = 0; i < nvars_; ++i)
        if (i != j && e[static_cast<std::size_t>(i)] != 0)
          throw std::logic_error("to_univariate: polynomial involves another variable");
      c[static_cast<std::size_t>(e[static_cast<std::size_t>(j)])] = v;
    }
    return UnivariatePolynomial<K>(std::move(c));
  }

  // Substitutes images[j] for variable j; images share a common nvars.
  MultivariatePolynomial substitute(const std::vector<MultivariatePolynomial>& images) const {
    assert(static_cast<int>(images.size()) == nvars_);
    int nv = 0;
    for (const auto& g : images) nv = std::max(nv, g.nvars());
    MultivariatePolynomial r = constant(nv, K{});
    std::vector<std::vector<MultivariatePolynomial>> pows(images.size());
    for (std::size_t j = 0; j < images.size(); ++j)
      pows[j].push_back(constant(nv, K(1)));
    for (const auto& [e, c] : t_) {
      MultivariatePolynomial term = constant(nv, c);
      for (std::size_t j = 0; j < images.size(); ++j) {
        const int k = e[j];
        while (static_cast<int>(pows[j].size()) <= k)
          pows[j].push_back(pows[j].back() * images[j].pad_vars(nv));
        term = term * pows[j][static_cast<std::size_t>(k)];
      }
      r = r + term;
    }
    return r;
  }

  K eval(const std::vector<K>& point) const {
    assert(static_cast<int>(point.size()) == nvars_);
    K acc{};
    for (const auto& [e, c] : t_) {
      K term = c;
      for (std::size_t j = 0; j < point.size(); ++j)
        for (int i = 0; i < e[j]; ++i) term = term * point[j];
      acc = acc + term;
    }
    return acc;
  }

 private:
  int nvars_;
  Terms t_;
};

using MPolyQ = MultivariatePolynomial<BigRational>;

template <class K>
bool is_zero(const MultivariatePolynomial<K>& p) {
  return p.zero();
}

template <class K, class K2, class Fn>
MultivariatePolynomial<K2> map_coeffs(const MultivariatePolynomial<K>& p, Fn fn) {
  MultivariatePolynomial<K2> r = MultivariatePolynomial<K2>::constant(p.nvars(), K2{});
  for (const auto& [e, c] : p.terms()) r.add_term(e, fn(c));
  return r;
}

// Coefficient dividers for exact division in MultivariatePolynomial<K>.
// Fields divide directly; a polynomial coefficient ring divides exactly.
template <class K>
struct FieldCoeffDiv {
  K operator()(const K& a, const K& b) const { return a / b; }
};
struct UPolyCoeffDiv {
  UPolyQ operator()(const UPolyQ& a, const UPolyQ& b) const { return uni_div_exact(a, b); }
};

template <class K, class Div>
MultivariatePolynomial<K> mp_divide_exact_with(MultivariatePolynomial<K> A,
                                               MultivariatePolynomial<K> B, Div div) {
  MultivariatePolynomial<K>::align(A, B);
  if (B.zero()) throw std::domain_error("division by zero polynomial");
  MultivariatePolynomial<K> Q = MultivariatePolynomial<K>::constant(A.nvars(), K{});
  const auto& eb = B.leading_exponent();
  while (!A.zero()) {
    const auto& ea = A.leading_exponent();
    std::vector<int> e(ea.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = ea[i] - eb[i];
      if (e[i] < 0) throw std::logic_error("mp_divide_exact: not divisible");
    }
    K c = div(A.leading_coeff(), B.leading_coeff());
    MultivariatePolynomial<K> t = MultivariatePolynomial<K>::constant(A.nvars(), K{});
    t.add_term(std::move(e), std::move(c));
    Q = Q + t;
    A = A - t * B;
  }
  return Q;
}

template <class K>
MultivariatePolynomial<K> mp_divide_exact(const MultivariatePolynomial<K>& A,
                                          const MultivariatePolynomial<K>& B) {
  return mp_divide_exact_with(A, B, FieldCoeffDiv<K>{});
}

template <class K>
MultivariatePolynomial<K> mp_monic(const MultivariatePolynomial<K>& A) {
  if (A.zero()) return A;
  K inv = K(1) / A.leading_coeff();
  return inv * A;
}

namespace detail {

// Pseudo-remainder over an arbitrary coefficient ring: some power of lc(b)
// times a, reduced below deg b. Enough for primitive PRS use.
template <class R>
UnivariatePolynomial<R> ring_prem(UnivariatePolynomial<R> a, const UnivariatePolynomial<R>& b) {
  const int db = b.degree();
  assert(db >= 0);
  while (!a.zero() && a.degree() >= db) {
    const R la = a.leading();
    const int da = a.degree();
    a = b.leading() * a - UnivariatePolynomial<R>::monomial(da - db, la) * b;
    assert(a.degree() < da);
  }
  return a;
}

}  // namespace detail

template <class K>
MultivariatePolynomial<K> mp_gcd(MultivariatePolynomial<K> A, MultivariatePolynomial<K> B);

namespace detail {

template <class K>
MultivariatePolynomial<K> up_content(const UnivariatePolynomial<MultivariatePolynomial<K>>& p) {
  MultivariatePolynomial<K> g;
  for (const auto& c : p.coeffs()) g = mp_gcd(g, c);
  return g;
}

// Coefficients whose numeric payload is a rational or a polynomial residue
// over Q. Only these can be rescaled by a rational scalar below.
template <class K>
constexpr bool kRationalBacked = std::is_same_v<K, BigRational> || requires(const K& c) {
  c.residue().coeff(0);
  c.residue().degree();
};

// Divides out the rational content. A nonzero rational factor is a unit for
// every gcd caller (results end monic), and unit numeric content keeps the
// pseudo-remainder growth polynomial instead of compounding per step.
template <class K>
UnivariatePolynomial<MultivariatePolynomial<K>> rational_rescaled(
    UnivariatePolynomial<MultivariatePolynomial<K>> p) {
  if constexpr (!kRationalBacked<K>) {
    return p;
  } else {
    auto visit = [](const K& c, auto&& fn) {
      if constexpr (std::is_same_v<K, BigRational>) {
        fn(c);
      } else {
        const auto& r = c.residue();
        for (int i = 0; i <= r.degree(); ++i) fn(r.coeff(i));
      }
    };
    BigInt l = 1;
    for (const auto& mp : p.coeffs())
      for (const auto& [e, c] : mp.terms())
        visit(c, [&](const BigRational& q) { l = int_lcm(l, den(q)); });
    BigInt g = 0;
    for (const auto& mp : p.coeffs())
      for (const auto& [e, c] : mp.terms())
        visit(c, [&](const BigRational& q) { g = int_gcd(g, num(q) * (l / den(q))); });
    if (g == 0 || (l == 1 && g == 1)) return p;
    const K sc{BigRational(l, g)};
    std::vector<MultivariatePolynomial<K>> cs;
    cs.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) cs.push_back(sc * a);
    return UnivariatePolynomial<MultivariatePolynomial<K>>(std::move(cs));
  }
}

template <class K>
UnivariatePolynomial<MultivariatePolynomial<K>> up_primitive(
    UnivariatePolynomial<MultivariatePolynomial<K>> p) {
  MultivariatePolynomial<K> c = up_content(p);
  if (c.zero()) return p;
  if (!c.is_constant()) {
    std::vector<MultivariatePolynomial<K>> cs;
    for (const auto& a : p.coeffs()) cs.push_back(mp_divide_exact(a, c));
    p = UnivariatePolynomial<MultivariatePolynomial<K>>(std::move(cs));
  }
  return rational_rescaled(std::move(p));
}

template <class K>
UnivariatePolynomial<MultivariatePolynomial<K>> as_poly_in(const MultivariatePolynomial<K>& p,
                                                           int j) {
  return UnivariatePolynomial<MultivariatePolynomial<K>>(p.coeffs_in(j));
}

template <class K>
MultivariatePolynomial<K> from_poly_in(const UnivariatePolynomial<MultivariatePolynomial<K>>& p,
                                       int j, int nvars) {
  return MultivariatePolynomial<K>::from_coeffs_in(j, nvars, p.coeffs());
}

}  // namespace detail

template <class K>
MultivariatePolynomial<K> mp_content_in(const MultivariatePolynomial<K>& A, int j) {
  return detail::up_content(detail::as_poly_in(A, j));
}

// Monic gcd by primitive pseudo-remainder sequences, recursing on contents.
template <class K>
MultivariatePolynomial<K> mp_gcd(MultivariatePolynomial<K> A, MultivariatePolynomial<K> B) {
  using MP = MultivariatePolynomial<K>;
  if (A.zero()) return mp_monic(B);
  if (B.zero()) return mp_monic(A);
  MP::align(A, B);
  const int nv = A.nvars();
  if (A.is_constant() || B.is_constant()) return MP::constant(nv, K(1));

  int v = -1, best = 0;
  for (int j = 0; j < nv; ++j) {
    const int da = A.degree_in(j), db = B.degree_in(j);
    if (da >= 1 && db >= 1) {
      const int score = std::max(da, db);
      if (v < 0 || score < best) {
        v = j;
        best = score;
      }
    }
  }
  if (v < 0) {
    // No shared variable; the gcd divides a content free of one side's vars.
    for (int j = 0; j < nv; ++j) {
      if (A.degree_in(j) >= 1 && B.degree_in(j) == 0) return mp_gcd(mp_content_in(A, j), B);
      if (B.degree_in(j) >= 1 && A.degree_in(j) == 0) return mp_gcd(A, mp_content_in(B, j));
    }
    return MP::constant(nv, K(1));
  }

  MP contA = mp_content_in(A, v);
  MP contB = mp_content_in(B, v);
  MP cont = mp_gcd(contA, contB);
  auto a = detail::up_primitive(detail::as_poly_in(A, v));
  auto b = detail::up_primitive(detail::as_poly_in(B, v));
  if (a.degree() < b.degree()) std::swap(a, b);
  MP g;
  for (;;) {
    auto r = detail::ring_prem(a, b);
    if (r.zero()) {
      g = detail::from_poly_in(detail::up_primitive(b), v, nv);
      break;
    }
    if (r.degree() == 0) {
      g = MP::constant(nv, K(1));
      break;
    }
    a = std::move(b);
    b = detail::up_primitive(std::move(r));
  }
  return mp_monic(cont * g);
}

template <class K>
MultivariatePolynomial<K> mp_squarefree_part(const MultivariatePolynomial<K>& A) {
  if (A.zero()) throw std::domain_error("squarefree part of zero");
  if (A.is_constant()) return mp_monic(A);
  MultivariatePolynomial<K> g;
  for (int j = 0; j < A.nvars(); ++j) {
    if (A.degree_in(j) < 1) continue;
    g = mp_gcd(g, A.partial(j));
  }
  g = mp_gcd(g, A);
  if (g.is_constant()) return mp_monic(A);
  return mp_monic(mp_divide_exact(A, g));
}

template <class K>
MultivariatePolynomial<K> mp_leading_homogeneous(const MultivariatePolynomial<K>& A) {
  MultivariatePolynomial<K> r = MultivariatePolynomial<K>::constant(A.nvars(), K{});
  const int d = A.total_degree();
  for (const auto& [e, c] : A.terms())
    if (std::accumulate(e.begin(), e.end(), 0) == d) r.add_term(e, c);
  return r;
}

// Sylvester resultant with respect to variable j.
template <class K, class Div>
MultivariatePolynomial<K> mp_resultant_with(const MultivariatePolynomial<K>& A,
                                            const MultivariatePolynomial<K>& B, int j, Div div) {
  using MP = MultivariatePolynomial<K>;
  if (A.zero() || B.zero()) return MP{};
  const int da = A.degree_in(j), db = B.degree_in(j);
  const int nv = std::max(A.nvars(), B.nvars());
  if (da == 0 && db == 0) return MP::constant(nv, K(1));
  if (da == 0) return A.pad_vars(nv).pow(db);
  if (db == 0) return B.pad_vars(nv).pow(da);
  auto ca = A.pad_vars(nv).coeffs_in(j);
  auto cb = B.pad_vars(nv).coeffs_in(j);
  const int n = da + db;
  Matrix<MP> S(n, n);
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) S.at(r, r + k) = ca[static_cast<std::size_t>(da - k)];
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) S.at(db + r, r + k) = cb[static_cast<std::size_t>(db - k)];
  auto mpdiv = [&](const MP& x, const MP& y) { return mp_divide_exact_with(x, y, div); };
  return bareiss_det(std::move(S), mpdiv);
}

template <class K>
MultivariatePolynomial<K> mp_resultant(const MultivariatePolynomial<K>& A,
                                       const MultivariatePolynomial<K>& B, int j) {
  return mp_resultant_with(A, B, j, FieldCoeffDiv<K>{});
}

// Canonical text: graded-lex descending, explicit '*', '^' powers, spaces
// around binary +/-. Examples: "3*x^2*y - 1/2*y + 5", "-x + 1".
inline std::string mp_to_string(const MPolyQ& p, const std::vector<std::string>& names) {
  if (p.zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    BigRational a = neg ? BigRational(-c) : c;
    std::string vars;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names.at(j);
      if (e[j] > 1) vars += "^" + std::to_string(e[j]);
    }
    if (vars.empty()) {
      out += to_string(a);
    } else if (a == 1) {
      out += vars;
    } else {
      out += to_string(a) + "*" + vars;
    }
  }
  return out;
}

}  // namespace pencillab
