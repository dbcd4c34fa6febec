#include <catch2/catch_amalgamated.hpp>

#include "pencillab/irrcount.hpp"

using namespace pencillab;

namespace {

MPolyQ X() { return MPolyQ::variable(2, 0); }
MPolyQ Y() { return MPolyQ::variable(2, 1); }
MPolyQ C(long n) { return MPolyQ::constant(2, BigRational(n)); }

RFuncQ rf(const MPolyQ& p, const MPolyQ& q) { return RFuncQ::make(p, q); }

// f = (x^3 + y^3 + (1+x+y)^3) / (x y (1+x+y))
RFuncQ lorenzini() {
  MPolyQ s = C(1) + X() + Y();
  return rf(X().pow(3) + Y().pow(3) + s.pow(3), X() * Y() * s);
}

bool divides(const UPolyQ& d, const UPolyQ& p) {
  return !p.zero() && uni_gcd(d, p) == uni_monic(d);
}

UPolyQ candidate_product(const CandidateSet& cs) {
  UPolyQ prod = UPolyQ::constant(BigRational(1));
  for (const auto& c : cs.finite) prod = prod * c;
  return prod;
}

}  // namespace

TEST_CASE("absolutely irreducible counts on classic examples") {
  CHECK(count_abs_irred(X() * Y() - C(1)) == 1);
  CHECK(count_abs_irred(X() * Y()) == 2);
  CHECK(count_abs_irred(X() * X() - Y() * Y()) == 2);
  // Irreducible over Q but splits over Q(i).
  CHECK(count_abs_irred(X() * X() + Y() * Y()) == 2);
  CHECK(count_abs_irred(X() * X() + Y()) == 1);
  CHECK(count_abs_irred(X() * (Y() - C(1)) * (X() + Y())) == 3);
  CHECK(count_abs_irred((X() * X() + Y()) * (X() + Y() * Y())) == 2);
}

TEST_CASE("counts ignore multiplicities") {
  CHECK(count_abs_irred((X() * Y()).pow(2)) == 2);
  CHECK(count_abs_irred((X() * X() - Y() * Y()).pow(3)) == 2);
  CHECK(count_abs_irred((X() * X() + Y()).pow(2)) == 1);
}

TEST_CASE("single-variable and degenerate inputs") {
  MPolyQ u = X().pow(3) - X();  // x(x-1)(x+1)
  CHECK(count_abs_irred(u) == 3);
  CHECK(count_abs_irred(X().pow(3)) == 1);
  CHECK(count_abs_irred(C(7)) == 0);
  CHECK_THROWS_AS(count_abs_irred(MPolyQ()), std::domain_error);
  // Variables in nonadjacent slots.
  MPolyQ x3 = MPolyQ::variable(3, 0), z3 = MPolyQ::variable(3, 2);
  CHECK(count_abs_irred(x3 * x3 - z3 * z3) == 2);
}

TEST_CASE("counts are additive over coprime squarefree factors") {
  MPolyQ a = X() * X() + Y() * Y();
  MPolyQ b = X() * Y() - C(1);
  CHECK(count_abs_irred(a * b) == count_abs_irred(a) + count_abs_irred(b));
  MPolyQ lines = (X() + Y()) * (X() - Y()) * (X() + Y() + C(1));
  CHECK(count_abs_irred(lines) == 3);
}

TEST_CASE("counts are invariant under linear changes of variables") {
  std::vector<MPolyQ> samples = {X() * Y(), X() * X() + Y() * Y(),
                                 X() * X() * Y() + Y() * Y() - C(2)};
  // x -> x + 2y + 1, y -> y - 3
  std::vector<MPolyQ> images = {X() + C(2) * Y() + C(1), Y() - C(3)};
  for (const auto& F : samples)
    CHECK(count_abs_irred(F.substitute(images)) == count_abs_irred(F));
}

TEST_CASE("counts agree over an extension field") {
  auto ctx = NumberFieldContext::make(UPolyQ({BigRational(1), BigRational(0), BigRational(1)}));
  auto lift = [&](const BigRational& c) { return NumberFieldElement(ctx, UPolyQ::constant(c)); };
  for (const auto& F : {X() * X() + Y() * Y(), X() * Y() - C(1), X() * Y()}) {
    auto FN = map_coeffs<BigRational, NumberFieldElement>(F, lift);
    CHECK(count_abs_irred(FN) == count_abs_irred(F));
  }
}

TEST_CASE("generic counts separate composite from non-composite") {
  CHECK(generic_count(rf(X(), Y())) == 1);
  CHECK(generic_count(rf(X() * Y(), C(1))) == 1);
  CHECK(generic_count(rf(X() * X() + Y().pow(3), C(1))) == 1);
  CHECK(generic_count(lorenzini()) == 1);

  CHECK(generic_count(rf(X() * X(), Y() * Y())) == 2);
  CHECK(generic_count(rf((X() * Y()).pow(2), C(1))) == 2);
  MPolyQ s = X() + Y();
  CHECK(generic_count(rf(s * s + C(1), s)) == 2);

  // Pencils in one variable have as many generic roots as the degree.
  CHECK(generic_count(rf(X() * X() + C(1), X())) == 2);
  CHECK(generic_count(rf(X() + C(1), C(2))) == 1);

  CHECK_THROWS_AS(generic_count(rf(C(3), C(2))), ConstantInput);
}

TEST_CASE("spectral candidates cover every multi-factor member") {
  struct Sample {
    RFuncQ f;
    std::vector<BigRational> expect_roots;
  };
  std::vector<Sample> samples;
  samples.push_back({rf(X() * Y(), C(1)), {BigRational(0)}});
  samples.push_back({rf(X().pow(3) + Y().pow(3), C(1)), {BigRational(0)}});
  samples.push_back({lorenzini(), {BigRational(3)}});

  for (const auto& s : samples) {
    auto cs = spectral_candidates(s.f);
    UPolyQ prod = candidate_product(cs);
    for (const auto& r : s.expect_roots) {
      UPolyQ lin = UPolyQ::variable() - UPolyQ::constant(r);
      CHECK(divides(lin, prod));
    }
    // Away from the candidate roots the member must be a single factor.
    int checked = 0;
    for (long v = -20; v <= 20 && checked < 20; ++v) {
      BigRational l0(v);
      if (is_zero(prod.eval(l0))) continue;
      MPolyQ member = pencil_member(s.f, l0);
      if (member.is_constant()) continue;
      CHECK(count_abs_irred(member) == 1);
      ++checked;
    }
    CHECK(checked >= 15);
    // Candidates stay pairwise coprime and squarefree.
    for (std::size_t i = 0; i < cs.finite.size(); ++i) {
      CHECK(uni_squarefree_part(cs.finite[i]) == cs.finite[i]);
      for (std::size_t j = i + 1; j < cs.finite.size(); ++j)
        CHECK(uni_gcd(cs.finite[i], cs.finite[j]).degree() == 0);
    }
  }
}

// The fiber at 3 splits by a^3+b^3+c^3-3abc = (a+b+c)(a+jb+j^2c)(a+j^2b+jc),
// and the conjugate pair 3j, 3j^2 is cut out by t^2+3t+9.
TEST_CASE("lorenzini candidates catch all three line fibers") {
  auto cs = spectral_candidates(lorenzini());
  UPolyQ prod = candidate_product(cs);
  CHECK(divides(UPolyQ({BigRational(-3), BigRational(1)}), prod));
  CHECK(divides(UPolyQ({BigRational(9), BigRational(3), BigRational(1)}), prod));
  CHECK(cs.include_infinity);
}

TEST_CASE("lorenzini fiber counts at the special values") {
  RFuncQ f = lorenzini();
  CHECK(count_abs_irred(pencil_member(f, BigRational(3))) == 3);
  CHECK(count_abs_irred(pencil_member(f, BigRational(1))) == 1);
  CHECK(count_abs_irred(pencil_member_infinity(f)) == 3);
  // Conjugate block: both roots of t^2+3t+9 give three factors.
  auto ctx = NumberFieldContext::make(UPolyQ({BigRational(9), BigRational(3), BigRational(1)}));
  auto lift = [&](const BigRational& c) { return NumberFieldElement(ctx, UPolyQ::constant(c)); };
  auto FN = map_coeffs<BigRational, NumberFieldElement>(f.num(), lift) -
            NumberFieldElement::generator(ctx) *
                map_coeffs<BigRational, NumberFieldElement>(f.den(), lift);
  CHECK(count_abs_irred(FN) == 3);
}

TEST_CASE("candidate flags for infinity and degree drops") {
  auto cs1 = spectral_candidates(rf(X(), Y()));
  CHECK(cs1.include_infinity);
  CHECK_FALSE(cs1.degree_drop.has_value());

  auto cs2 = spectral_candidates(rf(X() * Y(), C(1)));
  CHECK_FALSE(cs2.include_infinity);

  // Proportional leading forms: degree drops at the ratio.
  auto cs3 = spectral_candidates(rf(C(2) * X() + C(2) * Y() + C(1), X() + Y() + C(3)));
  REQUIRE(cs3.degree_drop.has_value());
  CHECK(*cs3.degree_drop == BigRational(2));
  UPolyQ lin = UPolyQ::variable() - UPolyQ::constant(BigRational(2));
  CHECK(divides(lin, candidate_product(cs3)));

  // Numerator of lower degree: the drop sits at zero.
  auto cs4 = spectral_candidates(rf(Y(), X() * Y() + C(1)));
  REQUIRE(cs4.degree_drop.has_value());
  CHECK(*cs4.degree_drop == BigRational(0));

  CHECK_THROWS_AS(spectral_candidates(rf(X() * X(), Y() * Y())), CompositeInput);
  CHECK_THROWS_AS(spectral_candidates(rf(C(1), C(2))), ConstantInput);
}
