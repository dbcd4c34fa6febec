#pragma once

#include "pencillab/decomp.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pencillab {

enum class Verdict { Pass, Fail, NotApplicable };

// One spectrum point, or the Galois orbit of one. The defining polynomial is
// monic squarefree; its granularity is whatever the dynamic-evaluation
// branches settled on, so conjugate roots always share an entry while roots
// of different minimal polynomials may share one too when their counts agree.
struct SpectrumEntry {
  bool infinity = false;
  UPolyQ defining;
  int n = 0;
  int conjugacy = 1;
};

struct SliceRecord {
  std::uint64_t seed = 0;
  std::vector<std::array<long, 3>> coeffs;  // x_j -> a·x + b·y + c
};

// rho is disengaged exactly when the input is composite (the sum diverges).
struct SpectrumReport {
  int degree = 0;
  int nvars = 2;
  bool composite = false;
  std::vector<SpectrumEntry> entries;
  std::optional<int> rho;
  Verdict stein = Verdict::NotApplicable;
  Verdict theorem1 = Verdict::NotApplicable;
  Verdict lorenzini = Verdict::NotApplicable;
  std::vector<SliceRecord> slices;
  bool low_confidence = false;
};

namespace detail {

inline bool entry_before(const SpectrumEntry& a, const SpectrumEntry& b) {
  if (a.infinity != b.infinity) return b.infinity;
  if (a.defining.degree() != b.defining.degree()) return a.defining.degree() < b.defining.degree();
  return uni_to_string(a.defining, "t") < uni_to_string(b.defining, "t");
}

}  // namespace detail

inline SpectrumReport spectrum(const RFuncQ& f) {
  using detail::NFE;
  if (f.is_constant()) throw ConstantInput();
  if (detail::used_vars(f).size() > 2)
    throw std::invalid_argument("spectrum: more than two variables");

  SpectrumReport rep;
  rep.degree = f.degree();
  rep.nvars = f.nvars();
  if (generic_splits(f)) {
    rep.composite = true;
    return rep;
  }

  const auto cs = detail::spectral_candidates_unchecked(f);
  for (const UPolyQ& m : cs.finite) {
    if (m.degree() == 1) {
      const BigRational lambda = -m.coeff(0);
      MPolyQ member = pencil_member(f, lambda);
      if (member.is_constant()) continue;
      const int n = count_abs_irred(member);
      if (n >= 2) rep.entries.push_back({false, m, n, 1});
      continue;
    }
    auto pn = detail::lift_mp(f.num());
    auto qn = detail::lift_mp(f.den());
    for (const auto& [mod, n] : for_each_branch(m, [&](NFCtx ctx) {
           auto member = pn - NFE::generator(ctx) * qn;
           return member.is_constant() ? 1 : count_abs_irred(member);
         })) {
      if (n >= 2) rep.entries.push_back({false, mod, n, mod.degree()});
    }
  }
  if (cs.include_infinity) {
    const int n = count_abs_irred(f.den());
    if (n >= 2) rep.entries.push_back({true, UPolyQ(), n, 1});
  }
  std::sort(rep.entries.begin(), rep.entries.end(), detail::entry_before);

  int rho = 0;
  for (const auto& e : rep.entries) rho += (e.infinity ? 1 : e.conjugacy) * (e.n - 1);
  rep.rho = rho;

  const int d = rep.degree;
  rep.stein = f.den().is_constant() ? (rho < d ? Verdict::Pass : Verdict::Fail)
                                    : Verdict::NotApplicable;
  rep.theorem1 = rho < d * d + d ? Verdict::Pass : Verdict::Fail;
  rep.lorenzini = rho < d * d ? Verdict::Pass : Verdict::Fail;
  return rep;
}

struct Slice {
  RFuncQ f2;
  SliceRecord record;
};

namespace detail {

// Substitutes one linear image per variable and keeps the draw only if both
// total degrees survive and nothing collapses into a common factor.
template <class Draw>
Slice slice_with(const RFuncQ& f, Draw&& draw, int budget) {
  for (int t = 0; t < budget; ++t) {
    SliceRecord rec;
    std::vector<MPolyQ> images;
    for (int j = 0; j < f.nvars(); ++j) {
      const std::array<long, 3> a = draw();
      rec.coeffs.push_back(a);
      images.push_back(BigRational(a[0]) * MPolyQ::variable(2, 0) +
                       BigRational(a[1]) * MPolyQ::variable(2, 1) +
                       MPolyQ::constant(2, BigRational(a[2])));
    }
    MPolyQ P = f.num().substitute(images);
    MPolyQ Q = f.den().substitute(images);
    if (P.total_degree() != f.num().total_degree()) continue;
    if (Q.total_degree() != f.den().total_degree()) continue;
    if (!P.is_constant() && !Q.is_constant() && !mp_gcd(P, Q).is_constant()) continue;
    return Slice{RFuncQ::make(std::move(P), std::move(Q)), std::move(rec)};
  }
  throw SliceDegenerate();
}

}  // namespace detail

inline Slice slice_to_bivariate(const RFuncQ& f, std::uint64_t seed, int budget = 8) {
  if (f.is_constant()) throw ConstantInput();
  if (f.nvars() < 3)
    throw std::invalid_argument("slice_to_bivariate needs at least three variables");
  SplitMix64 rng(seed ^ 0x736c696365ull);
  Slice s = detail::slice_with(
      f, [&] { return std::array<long, 3>{rng.range(-9, 9), rng.range(-9, 9), rng.range(-9, 9)}; },
      budget);
  s.record.seed = seed;
  return s;
}

namespace detail {

// Consensus must not depend on how the branch machinery grouped conjugacy
// classes, so reports are compared through granularity-free data: per count
// value, the product of all defining polynomials carrying it.
inline bool reports_agree(const SpectrumReport& a, const SpectrumReport& b) {
  if (a.composite != b.composite || a.rho != b.rho) return false;
  auto key = [](const SpectrumReport& r) {
    std::map<int, UPolyQ> prod;
    std::optional<int> inf;
    for (const auto& e : r.entries) {
      if (e.infinity) {
        inf = e.n;
        continue;
      }
      auto [it, fresh] = prod.try_emplace(e.n, e.defining);
      if (!fresh) it->second = it->second * e.defining;
    }
    return std::pair(std::move(prod), inf);
  };
  return key(a) == key(b);
}

}  // namespace detail

inline SpectrumReport spectrum_multivar(const RFuncQ& f, std::uint64_t seed, int budget = 8) {
  if (f.is_constant()) throw ConstantInput();
  if (f.nvars() < 3)
    throw std::invalid_argument("spectrum_multivar needs at least three variables");

  auto run = [&](std::uint64_t s) {
    Slice sl = slice_to_bivariate(f, s, budget);
    SpectrumReport r = spectrum(sl.f2);
    r.nvars = f.nvars();
    r.slices = {std::move(sl.record)};
    return r;
  };
  SpectrumReport r1 = run(seed);
  SpectrumReport r2 = run(seed + 1);
  if (detail::reports_agree(r1, r2)) {
    r1.slices.push_back(std::move(r2.slices.front()));
    return r1;
  }
  SpectrumReport r3 = run(seed + 2);
  for (SpectrumReport* w : {&r1, &r2}) {
    if (detail::reports_agree(*w, r3)) {
      w->slices.push_back(std::move(r3.slices.front()));
      return *w;
    }
  }
  r1.slices.push_back(std::move(r2.slices.front()));
  r1.slices.push_back(std::move(r3.slices.front()));
  r1.low_confidence = true;
  return r1;
}

// Order of reducibility; disengaged means infinite (composite input).
inline std::optional<int> rho_of(const RFuncQ& f, std::uint64_t seed = 1, int budget = 8) {
  if (f.is_constant()) throw ConstantInput();
  return (f.nvars() < 3 ? spectrum(f) : spectrum_multivar(f, seed, budget)).rho;
}

}  // namespace pencillab
