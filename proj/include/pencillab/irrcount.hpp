#pragma once

#include "pencillab/linalg.hpp"
#include "pencillab/number_field.hpp"
#include "pencillab/ratfunc.hpp"
#include "pencillab/rng.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace pencillab {

// Linear system for counting absolutely irreducible factors of a squarefree
// bivariate F: the kernel consists of the pairs (G, H) with
//   G_y F - G F_y - H_x F + H F_x = 0,
// G within bidegree (m-1, n), H within (m, n-1), m = deg_x F, n = deg_y F.
// Its dimension equals the number of distinct absolutely irreducible factors
// of F in characteristic zero. Unknown layout: G coefficients first
// (column a*(n+1)+b for x^a y^b), then H (column a*n+b).
template <class K>
struct GaoSystem {
  Matrix<K> M;
  int m = 0, n = 0;
  int cols_g = 0, cols_h = 0;
  int unknowns() const { return cols_g + cols_h; }
};

template <class K>
GaoSystem<K> gao_system(const MultivariatePolynomial<K>& F) {
  using MP = MultivariatePolynomial<K>;
  GaoSystem<K> sys;
  sys.m = F.degree_in(0);
  sys.n = F.degree_in(1);
  const int m = sys.m, n = sys.n;
  if (m < 1 || n < 1) throw std::invalid_argument("gao_system needs positive degree in both variables");
  sys.cols_g = m * (n + 1);
  sys.cols_h = (m + 1) * n;
  const int rows = (2 * m) * (2 * n);
  sys.M = Matrix<K>(rows, sys.cols_g + sys.cols_h);
  const MP Fx = F.partial(0);
  const MP Fy = F.partial(1);
  auto row_of = [n](int r, int s) { return r * (2 * n) + s; };
  auto add = [&](const MP& P, int dx, int dy, int col, long scale) {
    if (scale == 0) return;
    const K sc = K(scale);
    for (const auto& [e, c] : P.terms())
      sys.M.at(row_of(e[0] + dx, e[1] + dy), col) = sys.M.at(row_of(e[0] + dx, e[1] + dy), col) + sc * c;
  };
  for (int a = 0; a <= m - 1; ++a)
    for (int b = 0; b <= n; ++b) {
      const int col = a * (n + 1) + b;
      if (b >= 1) add(F, a, b - 1, col, b);  // (x^a y^b)_y * F
      add(Fy, a, b, col, -1);                // - x^a y^b * F_y
    }
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= n - 1; ++b) {
      const int col = sys.cols_g + a * n + b;
      if (a >= 1) add(F, a - 1, b, col, -a);  // - (x^a y^b)_x * F
      add(Fx, a, b, col, 1);                  // + x^a y^b * F_x
    }
  return sys;
}

namespace detail {

// Repacks a polynomial using exactly the variables v0, v1 as a bivariate one.
template <class K>
MultivariatePolynomial<K> to_bivariate(const MultivariatePolynomial<K>& F, int v0, int v1) {
  auto R = MultivariatePolynomial<K>::constant(2, K{});
  for (const auto& [e, c] : F.terms()) R.add_term({e[v0], e[v1]}, c);
  return R;
}

// Global denominator clearing. A nonzero constant multiple has the same
// factor structure, rank behavior, and vanishing loci, and integral inputs
// keep the fraction-free eliminations and gcds downstream integral.
inline MPolyQ integer_scaled(const MPolyQ& F) {
  BigInt l = 1;
  for (const auto& [e, c] : F.terms()) l = int_lcm(l, den(c));
  if (l == 1) return F;
  return BigRational(l) * F;
}

inline MultivariatePolynomial<UPolyQ> integer_scaled(const MultivariatePolynomial<UPolyQ>& F) {
  BigInt l = 1;
  for (const auto& [e, c] : F.terms())
    for (int i = 0; i <= c.degree(); ++i) l = int_lcm(l, den(c.coeff(i)));
  if (l == 1) return F;
  return UPolyQ::constant(BigRational(l)) * F;
}

inline MultivariatePolynomial<NumberFieldElement> integer_scaled(
    const MultivariatePolynomial<NumberFieldElement>& F) {
  BigInt l = 1;
  for (const auto& [e, c] : F.terms()) {
    const UPolyQ& r = c.residue();
    for (int i = 0; i <= r.degree(); ++i) l = int_lcm(l, den(r.coeff(i)));
  }
  if (l == 1) return F;
  return NumberFieldElement(BigRational(l)) * F;
}

// Row-wise denominator clearing; row scaling keeps the rank.
inline Matrix<BigInt> clear_rows(const Matrix<BigRational>& A) {
  Matrix<BigInt> Z(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i) {
    BigInt l = 1;
    for (int j = 0; j < A.cols(); ++j) l = int_lcm(l, den(A.at(i, j)));
    for (int j = 0; j < A.cols(); ++j) Z.at(i, j) = num(A.at(i, j)) * (l / den(A.at(i, j)));
  }
  return Z;
}

constexpr std::uint64_t kRankPrime = 2305843009213693951ull;  // 2^61 - 1

// Image of A over Z/p, unless a denominator degenerates.
inline std::optional<Matrix<std::uint64_t>> mod_p_image(const Matrix<BigRational>& A,
                                                        std::uint64_t p) {
  Matrix<std::uint64_t> M(A.rows(), A.cols());
  const BigInt bp(p);
  auto powmod = [p](std::uint64_t a, std::uint64_t e) {
    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
      return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
    };
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      const BigRational& v = A.at(i, j);
      const std::uint64_t dn = static_cast<std::uint64_t>(den(v) % bp);
      if (dn == 0) return std::nullopt;
      BigInt nm = num(v) % bp;
      if (nm < 0) nm += bp;
      const std::uint64_t nu = static_cast<std::uint64_t>(nm);
      M.at(i, j) = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(nu) * powmod(dn, p - 2) % p);
    }
  return M;
}

}  // namespace detail

// Number of distinct absolutely irreducible factors of F over the algebraic
// closure. Multiplicities are ignored; constants have no factors.
inline int count_abs_irred(const MPolyQ& F0) {
  if (F0.zero()) throw std::domain_error("count_abs_irred of the zero polynomial");
  if (F0.is_constant()) return 0;
  MPolyQ F = detail::integer_scaled(mp_squarefree_part(detail::integer_scaled(F0)));
  const auto vars = F.vars_present();
  if (vars.size() == 1) return F.degree_in(vars[0]);
  if (vars.size() > 2) throw std::invalid_argument("count_abs_irred: more than two variables");
  auto sys = gao_system(detail::to_bivariate(F, vars[0], vars[1]));
  const int u = sys.unknowns();
  // Modular shortcut: rank can only drop mod p, so nullity 1 mod p together
  // with the guaranteed kernel pair (F_x, F_y) pins the exact answer.
  if (auto img = detail::mod_p_image(sys.M, detail::kRankPrime)) {
    if (u - rank_mod_p(std::move(*img), detail::kRankPrime) == 1) return 1;
  }
  return u - bareiss_rank_int(detail::clear_rows(sys.M));
}

inline int count_abs_irred(const MultivariatePolynomial<NumberFieldElement>& F0) {
  if (F0.zero()) throw std::domain_error("count_abs_irred of the zero polynomial");
  if (F0.is_constant()) return 0;
  auto F = detail::integer_scaled(mp_squarefree_part(detail::integer_scaled(F0)));
  const auto vars = F.vars_present();
  if (vars.size() == 1) {
    auto u = F.to_univariate(vars[0]);
    return uni_div_exact(u, uni_gcd(u, u.derivative())).degree();
  }
  if (vars.size() > 2) throw std::invalid_argument("count_abs_irred: more than two variables");
  auto sys = gao_system(detail::to_bivariate(F, vars[0], vars[1]));
  return sys.unknowns() - echelon_rank(sys.M);
}

namespace detail {

// Variables appearing in either numerator or denominator. At most one means
// every pencil member is a univariate polynomial.
inline std::vector<int> used_vars(const RFuncQ& f) {
  std::vector<int> used;
  for (int j = 0; j < f.nvars(); ++j)
    if (f.num().degree_in(j) > 0 || f.den().degree_in(j) > 0) used.push_back(j);
  return used;
}

// The generic pencil member p - λq as a polynomial with Q[λ] coefficients.
inline MultivariatePolynomial<UPolyQ> generic_member(const RFuncQ& f) {
  auto lift = [](const BigRational& c) { return UPolyQ::constant(c); };
  auto P = map_coeffs<BigRational, UPolyQ>(f.num(), lift);
  auto Q = map_coeffs<BigRational, UPolyQ>(f.den(), lift);
  return P - UPolyQ::variable() * Q;
}

struct FiberProbe {
  BigRational lambda;
  MPolyQ member;
};

// Draws fibers whose member keeps the full degree and bidegrees of the
// generic member and is squarefree. Such a fiber with one absolutely
// irreducible factor certifies that the generic count is 1: specialization
// never lowers the kernel dimension, and the trivial pair keeps it >= 1.
inline std::optional<FiberProbe> good_fiber(const RFuncQ& f, int v0, int v1, SplitMix64& rng,
                                            int tries) {
  const int d = f.degree();
  const int mx = std::max(f.num().degree_in(v0), f.den().degree_in(v0));
  const int my = std::max(f.num().degree_in(v1), f.den().degree_in(v1));
  for (int t = 0; t < tries; ++t) {
    BigRational l0(rng.range(-50, 50));
    MPolyQ F = pencil_member(f, l0);
    if (F.zero() || F.is_constant()) continue;
    if (F.total_degree() != d || F.degree_in(v0) != mx || F.degree_in(v1) != my) continue;
    MPolyQ g = mp_gcd(mp_gcd(F, F.partial(v0)), F.partial(v1));
    if (!g.is_constant()) continue;
    return FiberProbe{l0, std::move(F)};
  }
  return std::nullopt;
}

}  // namespace detail

// Number of absolutely irreducible factors of the generic pencil member
// p - λq over the closure of Q(λ). Exceeds 1 exactly for composite f.
inline int generic_count(const RFuncQ& f) {
  if (f.is_constant()) throw ConstantInput();
  const auto uv = detail::used_vars(f);
  if (uv.size() <= 1) return f.degree();
  if (uv.size() > 2) throw std::invalid_argument("generic_count: more than two variables");
  SplitMix64 rng(0x67656e6372756eull);
  for (int probe = 0; probe < 3; ++probe) {
    auto fiber = detail::good_fiber(f, uv[0], uv[1], rng, 8);
    if (!fiber) break;
    if (count_abs_irred(fiber->member) == 1) return 1;
  }
  // Exact symbolic elimination over Q[λ]. The generic member of a reduced
  // fraction is automatically squarefree in characteristic zero.
  auto sys =
      gao_system(detail::integer_scaled(detail::to_bivariate(detail::generic_member(f), uv[0], uv[1])));
  return sys.unknowns() - bareiss_rank_upoly(sys.M).rank;
}

// Whether the generic member splits, i.e. whether f is composite. One good
// count-1 fiber decides no. A non-composite spectrum carries fewer than
// deg^2 + deg finite points, so that many distinct splitting good fibers
// decide yes. Only a degenerate pencil leaves the symbolic count to decide.
inline bool generic_splits(const RFuncQ& f) {
  if (f.is_constant()) throw ConstantInput();
  const auto uv = detail::used_vars(f);
  if (uv.size() <= 1) return f.degree() > 1;
  if (uv.size() > 2) throw std::invalid_argument("generic_splits: more than two variables");
  const int d = f.degree();
  const int need = d * d + d + 1;
  const int mx = std::max(f.num().degree_in(uv[0]), f.den().degree_in(uv[0]));
  const int my = std::max(f.num().degree_in(uv[1]), f.den().degree_in(uv[1]));
  int hits = 0;
  for (long t = 0; t < need + 4 * d * d + 32; ++t) {
    const BigRational l0(t % 2 == 0 ? t / 2 : -(t / 2 + 1));
    MPolyQ F = pencil_member(f, l0);
    if (F.zero() || F.is_constant()) continue;
    if (F.total_degree() != d || F.degree_in(uv[0]) != mx || F.degree_in(uv[1]) != my) continue;
    if (!mp_gcd(mp_gcd(F, F.partial(uv[0])), F.partial(uv[1])).is_constant()) continue;
    if (count_abs_irred(F) == 1) return false;
    if (++hits >= need) return true;
  }
  return generic_count(f) > 1;
}

struct CandidateSet {
  std::vector<UPolyQ> finite;  // monic, squarefree, pairwise coprime
  bool include_infinity = false;
  std::optional<BigRational> degree_drop;
};

namespace detail {

// Inserts the squarefree part of p into a pairwise-coprime squarefree basis.
inline void coprime_insert(std::vector<UPolyQ>& basis, const UPolyQ& p0) {
  if (p0.zero()) return;
  UPolyQ q = uni_squarefree_part(p0);
  if (q.degree() < 1) return;
  std::vector<UPolyQ> nb;
  nb.reserve(basis.size() + 1);
  for (const UPolyQ& b : basis) {
    if (q.degree() < 1) {
      nb.push_back(b);
      continue;
    }
    UPolyQ g = uni_gcd(q, b);
    if (g.degree() < 1) {
      nb.push_back(b);
      continue;
    }
    if (g.degree() < b.degree()) nb.push_back(uni_div_exact(b, g));
    nb.push_back(g);
    q = uni_div_exact(q, g);
  }
  if (q.degree() >= 1) nb.push_back(q);
  basis = std::move(nb);
}

// λ-content: the gcd over Q[λ] of the coefficients with respect to the
// surviving variables. Vanishes at exactly the λ* where the whole polynomial
// vanishes identically in those variables.
inline UPolyQ lambda_content(const MultivariatePolynomial<UPolyQ>& R) {
  UPolyQ g;
  for (const auto& [e, c] : R.terms()) g = uni_gcd(g, c);
  return g;
}

// A maximal nonzero minor of a matrix over Q[λ] whose rank is cols - 1.
// Scalar elimination at a random point mod p selects the submatrix; a
// nonzero determinant mod p proves it nonsingular, and evaluation at
// degree-bound many integer points recovers its determinant exactly.
// Returns zero when the probes keep missing full rank; the caller falls
// back to symbolic elimination.
inline UPolyQ exact_maximal_minor(const Matrix<UPolyQ>& M, bool reversed) {
  const std::uint64_t p = kRankPrime;
  const int rows = M.rows(), cols = M.cols(), r = cols - 1;
  if (r < 1 || rows < r) return UPolyQ{};
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t acc = 1;
    while (e) {
      if (e & 1) acc = mulmod(acc, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return acc;
  };
  const BigInt bp(p);
  auto coeff_mod = [&](const BigRational& q) -> std::uint64_t {
    const std::uint64_t dn = static_cast<std::uint64_t>(den(q) % bp);
    BigInt nm = num(q) % bp;
    if (nm < 0) nm += bp;
    return mulmod(static_cast<std::uint64_t>(nm), powmod(dn, p - 2));
  };
  std::vector<int> rord(static_cast<std::size_t>(rows)), cord(static_cast<std::size_t>(cols));
  std::iota(rord.begin(), rord.end(), 0);
  std::iota(cord.begin(), cord.end(), 0);
  if (reversed) {
    std::reverse(rord.begin(), rord.end());
    std::reverse(cord.begin(), cord.end());
  }
  SplitMix64 rng(0x6d696e6f72ull + (reversed ? 1 : 0));
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::uint64_t l0 = rng.below(p - 1) + 1;
    Matrix<std::uint64_t> W(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const UPolyQ& c = M.at(i, j);
        std::uint64_t acc = 0;
        for (int k = c.degree(); k >= 0; --k) acc = (mulmod(acc, l0) + coeff_mod(c.coeff(k))) % p;
        W.at(i, j) = acc;
      }
    std::vector<char> used(static_cast<std::size_t>(rows), 0);
    std::vector<int> rsel, csel;
    rsel.reserve(static_cast<std::size_t>(r));
    csel.reserve(static_cast<std::size_t>(r));
    for (int cpos = 0; cpos < cols && static_cast<int>(csel.size()) < r; ++cpos) {
      const int c = cord[static_cast<std::size_t>(cpos)];
      int pr = -1;
      for (int rpos = 0; rpos < rows; ++rpos) {
        const int i = rord[static_cast<std::size_t>(rpos)];
        if (!used[static_cast<std::size_t>(i)] && W.at(i, c) != 0) {
          pr = i;
          break;
        }
      }
      if (pr < 0) continue;
      used[static_cast<std::size_t>(pr)] = 1;
      rsel.push_back(pr);
      csel.push_back(c);
      const std::uint64_t inv = powmod(W.at(pr, c), p - 2);
      for (int i = 0; i < rows; ++i) {
        if (used[static_cast<std::size_t>(i)] || W.at(i, c) == 0) continue;
        const std::uint64_t fct = mulmod(W.at(i, c), inv);
        for (int j = 0; j < cols; ++j) {
          const std::uint64_t sub = mulmod(fct, W.at(pr, j));
          W.at(i, j) = W.at(i, j) >= sub ? W.at(i, j) - sub : W.at(i, j) + p - sub;
        }
      }
    }
    if (static_cast<int>(csel.size()) != r) continue;
    int bound = 0;
    for (int i = 0; i < r; ++i) {
      int dmax = 0;
      for (int j = 0; j < r; ++j) dmax = std::max(dmax, M.at(rsel[i], csel[j]).degree());
      bound += dmax;
    }
    std::vector<BigRational> xs, ys;
    xs.reserve(static_cast<std::size_t>(bound) + 1);
    ys.reserve(static_cast<std::size_t>(bound) + 1);
    for (int t = 0; t <= bound; ++t) {
      Matrix<BigInt> B(r, r);
      const BigRational pt(t);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          const BigRational v = M.at(rsel[i], csel[j]).eval(pt);
          if (den(v) != 1) return UPolyQ{};
          B.at(i, j) = num(v);
        }
      const BigInt d = bareiss_det(std::move(B), [](const BigInt& a, const BigInt& b) { return BigInt(a / b); });
      xs.emplace_back(t);
      ys.emplace_back(d);
    }
    return uni_interpolate(xs, ys);
  }
  return UPolyQ{};
}

inline std::optional<BigRational> degree_drop_lambda(const RFuncQ& f) {
  const int dp = f.num().total_degree();
  const int dq = f.den().total_degree();
  if (dp < dq) return BigRational(0);
  if (dp > dq) return std::nullopt;
  MPolyQ LP = mp_leading_homogeneous(f.num());
  MPolyQ LQ = mp_leading_homogeneous(f.den());
  // Proportional leading forms drop the degree at their ratio.
  if (LP.leading_coeff() * LQ == LQ.leading_coeff() * LP)
    return BigRational(LP.leading_coeff() / LQ.leading_coeff());
  return std::nullopt;
}

// Candidate assembly without the compositeness precondition check.
inline CandidateSet spectral_candidates_unchecked(const RFuncQ& f) {
  CandidateSet cs;
  cs.include_infinity = f.den().total_degree() >= 1;
  cs.degree_drop = degree_drop_lambda(f);
  std::vector<UPolyQ> basis;
  const auto uv = used_vars(f);
  if (uv.size() > 2) throw std::invalid_argument("spectral_candidates: more than two variables");
  if (uv.size() == 2) {
    auto F = integer_scaled(to_bivariate(generic_member(f), uv[0], uv[1]));
    auto sys = gao_system(F);
    // Every maximal nonzero minor vanishes at every spectrum point while the
    // junk roots differ between minors, so the gcd of two independently
    // selected minors keeps the candidates close to the true spectrum.
    UPolyQ m1 = exact_maximal_minor(sys.M, false);
    UPolyQ m2 = exact_maximal_minor(sys.M, true);
    if (m1.zero() || m2.zero()) {
      auto e1 = bareiss_rank_upoly(sys.M);
      Matrix<UPolyQ> R(sys.M.rows(), sys.M.cols());
      for (int i = 0; i < sys.M.rows(); ++i)
        for (int j = 0; j < sys.M.cols(); ++j)
          R.at(i, j) = sys.M.at(sys.M.rows() - 1 - i, sys.M.cols() - 1 - j);
      auto e2 = bareiss_rank_upoly(std::move(R));
      m1 = e1.last_pivot;
      m2 = e2.last_pivot;
    }
    coprime_insert(basis, uni_gcd(m1, m2));
  }
  if (cs.degree_drop) {
    UPolyQ lin = UPolyQ::variable() - UPolyQ::constant(*cs.degree_drop);
    coprime_insert(basis, lin);
  }
  // Split off rational roots so rational spectrum points appear as linear
  // defining polynomials.
  std::vector<UPolyQ> out;
  for (const UPolyQ& b : basis) {
    if (b.degree() <= 1) {
      out.push_back(b);
      continue;
    }
    auto rr = uni_rational_roots(b);
    for (const BigRational& r : rr.roots)
      out.push_back(UPolyQ::variable() - UPolyQ::constant(r));
    if (rr.cofactor.degree() >= 1) out.push_back(uni_monic(rr.cofactor));
  }
  std::sort(out.begin(), out.end(), [](const UPolyQ& a, const UPolyQ& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return uni_to_string(a, "t") < uni_to_string(b, "t");
  });
  cs.finite = std::move(out);
  return cs;
}

}  // namespace detail

// Sound superset of the finite spectrum: every λ* with more than one
// absolutely irreducible factor in its member is a root of some entry (or
// the infinity flag). The member's distinct factors give that many
// independent kernel pairs, squarefree or not, full degree or not, so the
// specialized system loses rank and λ* divides every maximal minor.
inline CandidateSet spectral_candidates(const RFuncQ& f) {
  if (f.is_constant()) throw ConstantInput();
  if (generic_count(f) > 1) throw CompositeInput();
  return detail::spectral_candidates_unchecked(f);
}

}  // namespace pencillab
