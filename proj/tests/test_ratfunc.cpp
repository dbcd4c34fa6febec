#include <catch2/catch_amalgamated.hpp>

#include "pencillab/ratfunc.hpp"

using namespace pencillab;

namespace {

const MPolyQ X = MPolyQ::variable(2, 0);
const MPolyQ Y = MPolyQ::variable(2, 1);

MPolyQ C(long n) { return MPolyQ::constant(2, BigRational(n)); }

RFuncQ rf(const MPolyQ& n, const MPolyQ& d) { return RFuncQ::make(n, d); }

UPolyQ up(std::vector<long> c) {
  std::vector<BigRational> v;
  for (long x : c) v.emplace_back(x);
  return UPolyQ(std::move(v));
}

}  // namespace

TEST_CASE("fractions reduce to a canonical form") {
  RFuncQ f = rf(X.pow(2) - Y.pow(2), X + Y);
  REQUIRE(f.num() == X - Y);
  REQUIRE(f.den() == C(1));
  RFuncQ g = rf(X, C(2) * Y);
  REQUIRE(g.den() == Y);
  REQUIRE(g.num() == BigRational(1, 2) * X);
  REQUIRE_THROWS_AS(rf(X, MPolyQ::constant(2, BigRational(0))), ZeroDenominator);
}

TEST_CASE("degree of a reduced fraction") {
  REQUIRE(rf(X.pow(3) + C(1), X * Y).degree() == 3);
  REQUIRE(rf(X, Y).degree() == 1);
  REQUIRE(rf(C(5), C(1)).degree() == 0);
  REQUIRE(RFuncQ().zero());
}

TEST_CASE("arithmetic") {
  RFuncQ inv_x = rf(C(1), X);
  RFuncQ inv_y = rf(C(1), Y);
  REQUIRE(inv_x + inv_y == rf(X + Y, X * Y));
  RFuncQ f = rf(X, Y);
  REQUIRE(f / f == rf(C(1), C(1)));
  REQUIRE((f - f).zero());
  REQUIRE(f.pow(2) == rf(X.pow(2), Y.pow(2)));
}

TEST_CASE("pencil members") {
  RFuncQ f = rf(X, Y);
  REQUIRE(pencil_member(f, BigRational(2)) == X - C(2) * Y);
  REQUIRE(pencil_member_infinity(f) == Y);
}

TEST_CASE("partials and the jacobian derivation") {
  RFuncQ f = rf(X, Y);
  REQUIRE(f.partial(0) == rf(C(1), Y));
  REQUIRE(f.partial(1) == rf(-X, Y.pow(2)));
  // D_{x/y}(x) = x/y^2
  RFuncQ d = jacobian_derivation(f, rf(X, C(1)));
  REQUIRE(d == rf(X, Y.pow(2)));
  REQUIRE(jacobian_derivation(f, f).zero());
  REQUIRE(algebraically_dependent(f, f.pow(2)));
  REQUIRE_FALSE(algebraically_dependent(rf(X, C(1)), rf(Y, C(1))));
}

TEST_CASE("univariate fractions reduce") {
  auto r = UniRFuncQ::make(up({-1, 0, 1}), up({-1, 1}));
  REQUIRE(r.num() == up({1, 1}));
  REQUIRE(r.den() == up({1}));
  REQUIRE(r.degree() == 1);
}

TEST_CASE("composition") {
  RFuncQ g = rf(X, Y);
  auto t2 = UniRFuncQ::make(up({0, 0, 1}), up({1}));
  REQUIRE(compose(t2, g) == rf(X.pow(2), Y.pow(2)));

  auto r = UniRFuncQ::make(up({1, 0, 1}), up({0, 1}));  // (t^2+1)/t
  REQUIRE(compose(r, g) == rf(X.pow(2) + Y.pow(2), X * Y));

  auto s = UniRFuncQ::constant(BigRational(5));
  REQUIRE(compose(s, g) == rf(C(5), C(1)));

  // degree law: deg(r o g) = deg r * deg g
  RFuncQ inner = rf(X + Y, X - Y);
  REQUIRE(compose(r, inner).degree() == 2);
}
