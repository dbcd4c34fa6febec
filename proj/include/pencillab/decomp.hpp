#pragma once

#include "pencillab/irrcount.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pencillab {

// A certificate f = outer ∘ inner with deg outer >= 2. The inner function may
// need an extension of Q when the two extracted fiber factors are conjugate;
// field_modulus then carries the defining polynomial of that extension.
struct Decomposition {
  UniRationalFunction<NumberFieldElement> outer;
  RationalFunction<NumberFieldElement> inner;
  std::optional<UPolyQ> field_modulus;
};
struct NotComposite {};
struct ExtractionFailed {
  std::string reason;
};
using DecomposeResult = std::variant<Decomposition, NotComposite, ExtractionFailed>;

// Solves f = r ∘ g for the outer fraction r of degree k. Writing the
// homogenization basis b_i = num(g)^i den(g)^(k-i), the coefficient vectors
// (α, β) of r satisfy num(f)·Σβ_i b_i − den(f)·Σα_i b_i = 0, which is linear.
// Every nullspace vector already composes to f as a function, so the final
// check only filters degenerate representatives.
template <class K>
std::optional<UniRationalFunction<K>> solve_outer(const RationalFunction<K>& f,
                                                  const RationalFunction<K>& g, int k) {
  using MP = MultivariatePolynomial<K>;
  using UP = UnivariatePolynomial<K>;
  if (g.is_constant()) throw std::invalid_argument("solve_outer needs a nonconstant inner function");
  if (f.nvars() != g.nvars()) throw std::invalid_argument("solve_outer: variable count mismatch");
  if (k < 1 || f.degree() != k * g.degree())
    throw DegreeMismatch("solve_outer: degree of f is not k times the degree of g");

  std::vector<MP> basis(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i)
    basis[static_cast<std::size_t>(i)] = g.num().pow(i) * g.den().pow(k - i);
  std::vector<MP> cols;
  cols.reserve(2 * (static_cast<std::size_t>(k) + 1));
  for (int i = 0; i <= k; ++i) cols.push_back(-(f.den() * basis[static_cast<std::size_t>(i)]));
  for (int i = 0; i <= k; ++i) cols.push_back(f.num() * basis[static_cast<std::size_t>(i)]);

  std::map<std::vector<int>, int, GrlexGreater> rows;
  for (const MP& c : cols)
    for (const auto& [e, v] : c.terms()) rows.try_emplace(e, static_cast<int>(rows.size()));
  Matrix<K> A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [e, v] : cols[j].terms()) A.at(rows.at(e), static_cast<int>(j)) = v;

  for (const auto& v : nullspace(std::move(A))) {
    std::vector<K> ac(v.begin(), v.begin() + (k + 1));
    std::vector<K> bc(v.begin() + (k + 1), v.end());
    UP b(std::move(bc));
    if (b.zero()) continue;
    auto r = UniRationalFunction<K>::make(UP(std::move(ac)), std::move(b));
    try {
      if (compose(r, g) == f) return r;
    } catch (const DegreeLawViolation&) {
      // a representative whose two halves shared a univariate factor
    }
  }
  return std::nullopt;
}

namespace detail {

template <class K>
MultivariatePolynomial<K> from_bivariate(const MultivariatePolynomial<K>& F, int nvars, int v0,
                                         int v1) {
  auto R = MultivariatePolynomial<K>::constant(nvars, K{});
  for (const auto& [e, c] : F.terms()) {
    std::vector<int> full(static_cast<std::size_t>(nvars), 0);
    full[static_cast<std::size_t>(v0)] = e[0];
    full[static_cast<std::size_t>(v1)] = e[1];
    R.add_term(full, c);
  }
  return R;
}

using NFE = NumberFieldElement;
using MPN = MultivariatePolynomial<NFE>;
using UPN = UnivariatePolynomial<NFE>;

inline MPN lift_mp(const MPolyQ& p) {
  return map_coeffs<BigRational, NFE>(p, [](const BigRational& c) { return NFE(c); });
}
inline UPN lift_up(const UPolyQ& p) {
  std::vector<NFE> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.emplace_back(a);
  return UPN(std::move(c));
}

// m(u0 - s*T) as a polynomial in T over the field of u0.
inline UPN shifted_modulus(const UPolyQ& m, const NFE& u0, long s) {
  UPN x(std::vector<NFE>{u0, NFE(-s)});
  UPN acc;
  for (int i = m.degree(); i >= 0; --i) acc = acc * x + UPN::constant(NFE(m.coeff(i)));
  return acc;
}

// Res_T(a(T), b(u - s*T)) as a polynomial in u, over Q.
inline UPolyQ paired_root_poly(const UPolyQ& a, const UPolyQ& b, long s) {
  MPolyQ T = MPolyQ::variable(2, 0), U = MPolyQ::variable(2, 1);
  MPolyQ A = a.eval(T);
  MPolyQ B = b.eval(U - MPolyQ::constant(2, BigRational(s)) * T);
  return mp_resultant(A, B, 0).to_univariate(1);
}

// Everything fixed for one extraction attempt. F, Fx, gstar live in the
// bivariate layout; v0, v1, nvars_out say how to map an inner function back.
struct FiberWork {
  RFuncQ f2;
  int degf = 0;
  int nvars_out = 2;
  int v0 = 0;
  int v1 = 1;
  MPolyQ F;
  MPolyQ Fx;
  MPolyQ gstar;
};

// One way of naming two distinct resolvent roots c1 != c2.
struct RootPlan {
  enum Kind { QQ, BB2, QB, SameBlock, CrossBlocks } kind = QQ;
  BigRational r1, r2;  // QQ, QB
  UPolyQ a, b;         // blocks
};

inline void strip_rational_field(Decomposition& d) {
  auto rational_mp = [](const MPN& p) {
    for (const auto& [e, c] : p.terms())
      if (!c.is_rational()) return false;
    return true;
  };
  auto rational_up = [](const UPN& p) {
    for (const auto& c : p.coeffs())
      if (!c.is_rational()) return false;
    return true;
  };
  if (!rational_mp(d.inner.num()) || !rational_mp(d.inner.den()) ||
      !rational_up(d.outer.num()) || !rational_up(d.outer.den()))
    return;
  auto redo_mp = [](const MPN& p) {
    return map_coeffs<NFE, NFE>(p, [](const NFE& c) { return NFE(c.rational_value()); });
  };
  auto redo_up = [](const UPN& p) {
    std::vector<NFE> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.emplace_back(a.rational_value());
    return UPN(std::move(c));
  };
  d.inner = RationalFunction<NFE>::make(redo_mp(d.inner.num()), redo_mp(d.inner.den()));
  d.outer = UniRationalFunction<NFE>::make(redo_up(d.outer.num()), redo_up(d.outer.den()));
  d.field_modulus.reset();
}

// Canonical presentation: numerator dominates via the 1/t move when possible,
// then the numerator is made monic by conjugating the outer with t -> c·t.
inline void mobius_normalize(Decomposition& d, const RationalFunction<NFE>& fK) {
  if (d.inner.num().total_degree() < d.inner.den().total_degree()) {
    const int k = std::max(d.outer.num().degree(), d.outer.den().degree());
    auto rev = [&](const UPN& P) {
      std::vector<NFE> c(static_cast<std::size_t>(k) + 1, NFE{});
      for (int i = 0; i <= k; ++i) c[static_cast<std::size_t>(k - i)] = P.coeff(i);
      return UPN(std::move(c));
    };
    d.outer = UniRationalFunction<NFE>::make(rev(d.outer.num()), rev(d.outer.den()));
    d.inner = RationalFunction<NFE>::make_coprime(d.inner.den(), d.inner.num());
  }
  NFE c = d.inner.num().leading_coeff();
  if (!(c == NFE(1))) {
    d.inner = RationalFunction<NFE>::make_coprime((NFE(1) / c) * d.inner.num(), d.inner.den());
    auto scale = [&](const UPN& P) {
      std::vector<NFE> out(static_cast<std::size_t>(P.degree()) + 1, NFE{});
      NFE pw(1);
      for (int i = 0; i <= P.degree(); ++i) {
        out[static_cast<std::size_t>(i)] = P.coeff(i) * pw;
        pw = pw * c;
      }
      return UPN(std::move(out));
    };
    d.outer = UniRationalFunction<NFE>::make(scale(d.outer.num()), scale(d.outer.den()));
  }
  if (compose(d.outer, d.inner) != fK)
    throw std::logic_error("normalization broke the decomposition certificate");
}

// Picks the branch whose modulus kills c and returns its factor under the
// embedding t -> c. Monic gcds commute with that map, so the image equals the
// factor computed over the big field directly. A zero-divisor evaluation
// propagates and lets the enclosing driver split.
inline std::optional<MPN> factor_for_root(const std::vector<std::pair<UPolyQ, MPN>>& branches,
                                          const NFE& c) {
  auto at_c = [&](const UPolyQ& r) {
    NFE acc(BigRational(0));
    for (int i = r.degree(); i >= 0; --i) acc = acc * c + NFE(r.coeff(i));
    return acc;
  };
  for (const auto& [mod, G] : branches) {
    NFE v = at_c(mod);
    if (v.zero()) return map_coeffs<NFE, NFE>(G, [&](const NFE& a) { return at_c(a.residue()); });
    nf_invert(v);
  }
  return std::nullopt;
}

// Builds the ratio of two extracted fiber factors as the inner function and
// solves for the outer one. Zero-divisor signals propagate to the enclosing
// branch driver.
inline std::optional<Decomposition> pair_from_factors(const FiberWork& w, const NFCtx& ctx,
                                                      MPN F1, MPN F2) {
  if (F1.is_constant() || F2.is_constant() || F1 == F2) return std::nullopt;
  auto inner = RationalFunction<NFE>::make(std::move(F1), std::move(F2));
  if (inner.is_constant()) return std::nullopt;
  const int dg = inner.degree();
  if (dg < 1 || w.degf % dg != 0 || w.degf / dg < 2) return std::nullopt;
  auto fK = RationalFunction<NFE>::make(lift_mp(w.f2.num()), lift_mp(w.f2.den()));
  auto r = solve_outer(fK, inner, w.degf / dg);
  if (!r) return std::nullopt;
  Decomposition d{*r, inner, ctx ? std::optional<UPolyQ>(ctx->modulus()) : std::nullopt};
  mobius_normalize(d, fK);
  strip_rational_field(d);
  if (w.nvars_out != 2 || w.v0 != 0 || w.v1 != 1)
    d.inner = RationalFunction<NFE>::make(from_bivariate(d.inner.num(), w.nvars_out, w.v0, w.v1),
                                          from_bivariate(d.inner.den(), w.nvars_out, w.v0, w.v1));
  return d;
}

// Extracts the fiber factors of the roots c1 != c2 by direct gcds.
inline std::optional<Decomposition> try_pair(const FiberWork& w, const NFCtx& ctx, const NFE& c1,
                                             const NFE& c2) {
  if (c1 == c2) return std::nullopt;
  MPN FK = lift_mp(w.F);
  MPN F1 = mp_gcd(FK, lift_mp(w.gstar) - c1 * lift_mp(w.Fx));
  MPN F2 = mp_gcd(FK, lift_mp(w.gstar) - c2 * lift_mp(w.Fx));
  return pair_from_factors(w, ctx, std::move(F1), std::move(F2));
}

// Runs fn over the branches of modulus m and returns the first engaged
// result, if any.
template <class Fn>
std::optional<Decomposition> first_branch(const UPolyQ& m, Fn&& fn) {
  for (auto& [mod, res] : for_each_branch(m, fn))
    if (res) return res;
  return std::nullopt;
}

inline std::optional<Decomposition> run_plan(const FiberWork& w, const RootPlan& plan) {
  // One gcd per root block; pair fields only ever see embedded images.
  auto block_factors = [&](const UPolyQ& m) {
    return for_each_branch(m, [&](NFCtx ctx) {
      NFE t = NFE::generator(ctx);
      return mp_gcd(lift_mp(w.F), lift_mp(w.gstar) - t * lift_mp(w.Fx));
    });
  };
  switch (plan.kind) {
    case RootPlan::QQ:
      return try_pair(w, nullptr, NFE(plan.r1), NFE(plan.r2));
    case RootPlan::BB2:
      return first_branch(plan.a, [&](NFCtx ctx) -> std::optional<Decomposition> {
        NFE g = NFE::generator(ctx);
        NFE other = NFE(-ctx->modulus().coeff(1)) - g;  // the conjugate root
        MPN F1 = mp_gcd(lift_mp(w.F), lift_mp(w.gstar) - g * lift_mp(w.Fx));
        auto F2 = factor_for_root({{ctx->modulus(), F1}}, other);
        if (!F2) return std::nullopt;
        return pair_from_factors(w, ctx, std::move(F1), std::move(*F2));
      });
    case RootPlan::QB:
      return first_branch(plan.a, [&](NFCtx ctx) {
        return try_pair(w, ctx, NFE(plan.r1), NFE::generator(ctx));
      });
    case RootPlan::SameBlock:
    case RootPlan::CrossBlocks: {
      const bool same = plan.kind == RootPlan::SameBlock;
      const UPolyQ& ma = plan.a;
      const UPolyQ& mb = same ? plan.a : plan.b;
      for (long s = 1; s <= 6; ++s) {
        UPolyQ M = paired_root_poly(ma, mb, s);
        if (M.zero()) continue;
        if (same) {
          // Remove the diagonal pairs t' = t, which sit at u = (1+s)t.
          std::vector<BigRational> dc(static_cast<std::size_t>(ma.degree()) + 1);
          BigRational pw(1);
          for (int i = ma.degree(); i >= 0; --i) {
            dc[static_cast<std::size_t>(i)] = ma.coeff(i) * pw;
            pw *= BigRational(1 + s);
          }
          UPolyQ diag = uni_monic(UPolyQ(std::move(dc)));
          UPolyQ g = uni_gcd(M, diag);
          if (g.degree() >= 1) M = uni_div_exact(M, g);
          if (uni_gcd(M, diag).degree() != 0) continue;
        }
        M = uni_monic(M);
        const int want = same ? ma.degree() * (ma.degree() - 1) : ma.degree() * mb.degree();
        if (M.degree() != want) continue;
        if (uni_gcd(M, M.derivative()).degree() != 0) continue;
        auto ga = block_factors(ma);
        auto gb = same ? ga : block_factors(mb);
        return first_branch(M, [&](NFCtx ctx) -> std::optional<Decomposition> {
          NFE u0 = NFE::generator(ctx);
          UPN g = uni_gcd(lift_up(ma), shifted_modulus(mb, u0, s));
          if (g.degree() != 1) return std::nullopt;
          NFE c1 = -g.coeff(0);  // g is monic linear
          NFE c2 = u0 - NFE(s) * c1;
          auto F1 = factor_for_root(ga, c1);
          auto F2 = factor_for_root(gb, c2);
          if (!F1 || !F2) return std::nullopt;
          return pair_from_factors(w, ctx, std::move(*F1), std::move(*F2));
        });
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

inline std::vector<RootPlan> make_plans(const std::vector<BigRational>& rats,
                                        const std::vector<UPolyQ>& blocks) {
  std::vector<RootPlan> plans;
  for (std::size_t i = 0; i < rats.size() && plans.size() < 8; ++i)
    for (std::size_t j = i + 1; j < rats.size() && plans.size() < 8; ++j)
      plans.push_back({RootPlan::QQ, rats[i], rats[j], {}, {}});
  for (const auto& b : blocks)
    if (b.degree() == 2) plans.push_back({RootPlan::BB2, {}, {}, b, {}});
  for (std::size_t i = 0; i < rats.size() && i < 2; ++i)
    for (std::size_t j = 0; j < blocks.size() && j < 2; ++j)
      plans.push_back({RootPlan::QB, rats[i], {}, blocks[j], {}});
  for (const auto& b : blocks)
    if (b.degree() >= 3) plans.push_back({RootPlan::SameBlock, {}, {}, b, {}});
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size() && plans.size() < 18; ++j)
      plans.push_back({RootPlan::CrossBlocks, {}, {}, blocks[i], blocks[j]});
  if (plans.size() > 18) plans.resize(18);
  return plans;
}

// Accumulates the eliminant roots of one side into a coprime squarefree
// basis. Any factor of F divides gstar - a·Fx for its own ratio a, so the
// content of the eliminant vanishes there.
inline void resolvent_roots(const MPolyQ& F, const MPolyQ& gstar, const MPolyQ& Fx, int var,
                            std::vector<UPolyQ>& basis) {
  auto lift = [](const BigRational& c) { return UPolyQ::constant(c); };
  auto Fc = map_coeffs<BigRational, UPolyQ>(F, lift);
  auto E = map_coeffs<BigRational, UPolyQ>(gstar, lift) -
           UPolyQ::variable() * map_coeffs<BigRational, UPolyQ>(Fx, lift);
  if (Fc.degree_in(var) < 1 || E.degree_in(var) < 1) return;
  auto R = mp_resultant_with(Fc, E, var, UPolyCoeffDiv{});
  if (R.zero()) return;
  coprime_insert(basis, lambda_content(R));
}

}  // namespace detail

// Constructive decomposition. A fiber of full degree, squarefree in both
// variables, with a one-dimensional kernel certifies NotComposite outright;
// otherwise two fiber factors are separated through the resolvent roots and
// their ratio serves as the inner function.
inline DecomposeResult decompose(const RFuncQ& f, std::uint64_t seed = 0x706c616e2d30ull) {
  using detail::NFE;
  if (f.is_constant()) throw ConstantInput();
  const auto uv = detail::used_vars(f);
  if (uv.size() > 2) throw std::invalid_argument("decompose: more than two variables");
  if (f.degree() <= 1) return NotComposite{};

  if (uv.size() == 1) {
    // One shared variable: f is literally (p/q) ∘ x_v.
    auto outer = UniRationalFunction<NFE>::make(detail::lift_up(f.num().to_univariate(uv[0])),
                                                detail::lift_up(f.den().to_univariate(uv[0])));
    auto inner = RationalFunction<NFE>::variable(f.nvars(), uv[0]);
    return Decomposition{std::move(outer), std::move(inner), std::nullopt};
  }

  detail::FiberWork w;
  w.f2 = RFuncQ::make(detail::to_bivariate(f.num(), uv[0], uv[1]),
                      detail::to_bivariate(f.den(), uv[0], uv[1]));
  w.degf = w.f2.degree();
  w.nvars_out = f.nvars();
  w.v0 = uv[0];
  w.v1 = uv[1];
  SplitMix64 rng(seed ^ 0x64656370615aull);
  std::string reason = "no usable fiber";

  for (int attempt = 0; attempt < 8; ++attempt) {
    auto fib = detail::good_fiber(w.f2, 0, 1, rng, 8);
    if (!fib) break;
    auto sys = gao_system(fib->member);
    auto kernel = nullspace(sys.M);
    if (kernel.empty()) continue;
    if (kernel.size() == 1) return NotComposite{};

    w.F = fib->member;
    w.Fx = w.F.partial(0);
    const int n = sys.n;
    std::vector<MPolyQ> gparts;
    for (const auto& v : kernel) {
      MPolyQ G = MPolyQ::constant(2, BigRational(0));
      for (int a = 0; a <= sys.m - 1; ++a)
        for (int b = 0; b <= n; ++b) {
          const BigRational& c = v[static_cast<std::size_t>(a * (n + 1) + b)];
          if (!is_zero(c)) G.add_term({a, b}, c);
        }
      gparts.push_back(std::move(G));
    }

    for (int draw = 0; draw < 3; ++draw) {
      w.gstar = MPolyQ::constant(2, BigRational(0));
      for (const auto& G : gparts)
        w.gstar = w.gstar + MPolyQ::constant(2, BigRational(rng.range(-9, 9))) * G;
      if (w.gstar.zero()) continue;

      std::vector<UPolyQ> basis;
      detail::resolvent_roots(w.F, w.gstar, w.Fx, 1, basis);
      detail::resolvent_roots(w.F, w.gstar, w.Fx, 0, basis);
      std::vector<BigRational> rats;
      std::vector<UPolyQ> blocks;
      for (const auto& b : basis) {
        auto rr = uni_rational_roots(b);
        for (auto& r : rr.roots) rats.push_back(std::move(r));
        if (rr.cofactor.degree() >= 2)
          blocks.push_back(uni_monic(rr.cofactor));
        else if (rr.cofactor.degree() == 1)
          rats.push_back(-rr.cofactor.coeff(0) / rr.cofactor.coeff(1));
      }
      if (rats.empty() && blocks.empty()) {
        reason = "empty resolvent";
        continue;
      }

      for (const auto& plan : detail::make_plans(rats, blocks)) {
        std::optional<Decomposition> got;
        try {
          got = detail::run_plan(w, plan);
        } catch (const std::domain_error&) {
          continue;  // degenerate division inside a failed plan
        } catch (const DegreeLawViolation&) {
          continue;  // zero divisors of a reducible modulus can dent degrees
        }
        if (got) return std::move(*got);
      }
      reason = "all root plans failed";
    }
  }
  return ExtractionFailed{reason};
}

// Exact compositeness test; the elimination fallback keeps the answer
// correct even when constructive extraction gives up.
inline bool is_composite(const RFuncQ& f, std::uint64_t seed = 0x706c616e2d30ull) {
  if (f.is_constant()) throw ConstantInput();
  auto r = decompose(f, seed);
  if (std::holds_alternative<Decomposition>(r)) return true;
  if (std::holds_alternative<NotComposite>(r)) return false;
  return generic_splits(f);
}

// Realizes g as s ∘ f when possible; nullopt means g is not in Q(f). For
// non-composite f the Jacobian-derivation kernel is exactly Q(f), so the
// answer is exhaustive.
inline std::optional<UniRFuncQ> express_in_f(const RFuncQ& g, const RFuncQ& f) {
  if (f.is_constant()) throw ConstantInput();
  if (is_composite(f)) throw CompositeBase();
  if (g.is_constant())
    return UniRFuncQ::make(g.num().to_univariate(0), g.den().to_univariate(0));
  if (g.degree() % f.degree() != 0) return std::nullopt;
  return solve_outer(g, f, g.degree() / f.degree());
}

}  // namespace pencillab
