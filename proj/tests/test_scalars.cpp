#include <catch2/catch_amalgamated.hpp>

#include "pencillab/rational.hpp"
#include "pencillab/rng.hpp"
#include "pencillab/upoly.hpp"

using namespace pencillab;

namespace {

UPolyQ up(std::vector<long> c) {
  std::vector<BigRational> v;
  for (long x : c) v.emplace_back(x);
  return UPolyQ(std::move(v));
}

}  // namespace

TEST_CASE("rationals reduce and print canonically") {
  REQUIRE(BigRational(2, 4) == BigRational(1, 2));
  REQUIRE(to_string(BigRational(-6, 4)) == "-3/2");
  REQUIRE(to_string(BigRational(8, 2)) == "4");
  REQUIRE(is_zero(BigRational(0)));
}

TEST_CASE("splitmix64 streams are reproducible") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 5; ++i) REQUIRE(a.next() == b.next());
  SplitMix64 c(7);
  for (int i = 0; i < 200; ++i) {
    long long v = c.range(-50, 50);
    REQUIRE(v >= -50);
    REQUIRE(v <= 50);
  }
}

TEST_CASE("polynomial basics") {
  UPolyQ z;
  REQUIRE(z.degree() == -1);
  REQUIRE(up({1, 0, 0}).degree() == 0);
  UPolyQ t = UPolyQ::variable();
  REQUIRE((t * t + t).degree() == 2);
  REQUIRE(up({2, 0, 6}).derivative() == up({0, 12}));
  REQUIRE(up({1, 0, 1}).eval(BigRational(3)) == BigRational(10));
}

TEST_CASE("division with remainder") {
  UPolyQ a = up({-1, 0, 0, 1});  // t^3 - 1
  UPolyQ b = up({-1, 1});        // t - 1
  auto [q, r] = uni_divmod(a, b);
  REQUIRE(r.zero());
  REQUIRE(q == up({1, 1, 1}));
  auto [q2, r2] = uni_divmod(up({1, 0, 1}), up({1, 1}));
  REQUIRE(q2 * up({1, 1}) + r2 == up({1, 0, 1}));
}

TEST_CASE("gcd over the rationals") {
  REQUIRE(uni_gcd(up({-1, 0, 1}), up({-1, 1})) == up({-1, 1}));
  // t^3 - t = t(t-1)(t+1), t^2 - 1 = (t-1)(t+1)
  REQUIRE(uni_gcd(up({0, -1, 0, 1}), up({-1, 0, 1})) == up({-1, 0, 1}));
  // gcd is monic even for scaled inputs
  REQUIRE(uni_gcd(up({0, 4}), up({0, 6})) == up({0, 1}));
  REQUIRE(uni_gcd(up({3}), up({0, 5})).degree() == 0);
}

TEST_CASE("squarefree part") {
  UPolyQ m = up({1, 1, 1});
  REQUIRE(uni_squarefree_part(m * m) == m);
  REQUIRE(uni_squarefree_part(up({0, 0, 2})) == up({0, 1}));
}

TEST_CASE("extended euclid certificate") {
  UPolyQ a = up({2, 0, 1});
  UPolyQ b = up({-1, 1, 3});
  auto e = uni_ext_gcd(a, b);
  REQUIRE(e.u * a + e.v * b == e.g);
  REQUIRE(e.g.degree() == 0);
}

TEST_CASE("printing") {
  REQUIRE(uni_to_string(up({1, 1, 1}), "λ") == "λ^2+λ+1");
  UPolyQ p = up({0, 0, 0, 2});
  p = p + UPolyQ::constant(BigRational(-1, 2)) * UPolyQ::variable();
  REQUIRE(uni_to_string(p, "λ") == "2*λ^3-1/2*λ");
  REQUIRE(uni_to_string(up({1, -1}), "t") == "-t+1");
  REQUIRE(uni_to_string(UPolyQ{}, "t") == "0");
}

TEST_CASE("rational roots") {
  auto r1 = uni_rational_roots(up({-1, 0, 0, 1}));
  REQUIRE(r1.roots == std::vector<BigRational>{BigRational(1)});
  REQUIRE(r1.cofactor == up({1, 1, 1}));

  // t(t+3)(t-1/2) = t^3 + 5/2 t^2 - 3/2 t
  std::vector<BigRational> c{BigRational(0), BigRational(-3, 2), BigRational(5, 2), BigRational(1)};
  auto r2 = uni_rational_roots(UPolyQ(c));
  std::vector<BigRational> want{BigRational(-3), BigRational(0), BigRational(1, 2)};
  REQUIRE(r2.roots == want);
  REQUIRE(r2.cofactor.degree() == 0);

  auto r3 = uni_rational_roots(up({1, 0, 1}));
  REQUIRE(r3.roots.empty());
  REQUIRE(r3.cofactor == up({1, 0, 1}));
}
