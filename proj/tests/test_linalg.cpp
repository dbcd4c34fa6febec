#include <catch2/catch_amalgamated.hpp>

#include "pencillab/linalg.hpp"
#include "pencillab/upoly.hpp"

using namespace pencillab;

namespace {

Matrix<BigRational> qmat(int r, int c, std::vector<long> v) {
  Matrix<BigRational> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = BigRational(v[static_cast<std::size_t>(i * c + j)]);
  return m;
}

Matrix<BigInt> zmat(int r, int c, std::vector<long> v) {
  Matrix<BigInt> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = BigInt(v[static_cast<std::size_t>(i * c + j)]);
  return m;
}

UPolyQ up(std::vector<long> c) {
  std::vector<BigRational> v;
  for (long x : c) v.emplace_back(x);
  return UPolyQ(std::move(v));
}

}  // namespace

TEST_CASE("field rank") {
  auto a = qmat(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
  REQUIRE(echelon_rank(a) == 2);
  auto b = qmat(2, 2, {1, 0, 0, 1});
  REQUIRE(echelon_rank(b) == 2);
}

TEST_CASE("nullspace vectors annihilate the matrix") {
  auto a = qmat(2, 3, {1, 2, 3, 0, 1, 1});
  auto ns = nullspace(a);
  REQUIRE(ns.size() == 1);
  auto orig = qmat(2, 3, {1, 2, 3, 0, 1, 1});
  for (int i = 0; i < 2; ++i) {
    BigRational s(0);
    for (int j = 0; j < 3; ++j) s += orig.at(i, j) * ns[0][static_cast<std::size_t>(j)];
    REQUIRE(is_zero(s));
  }
}

TEST_CASE("integer bareiss rank agrees with field rank") {
  std::vector<long> v{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3};
  auto z = zmat(4, 4, v);
  auto q = qmat(4, 4, v);
  REQUIRE(bareiss_rank_int(z) == echelon_rank(q));
  REQUIRE(bareiss_rank_int(zmat(3, 3, {1, 2, 3, 2, 4, 6, 3, 6, 9})) == 1);
  REQUIRE(bareiss_rank_int(zmat(2, 3, {0, 0, 0, 0, 0, 0})) == 0);
}

TEST_CASE("bareiss determinant") {
  auto div = [](const BigInt& a, const BigInt& b) { return a / b; };
  REQUIRE(bareiss_det(zmat(2, 2, {1, 2, 3, 4}), div) == BigInt(-2));
  REQUIRE(bareiss_det(zmat(3, 3, {2, 0, 1, 1, 1, 0, 0, 3, 1}), div) == BigInt(5));
  REQUIRE(bareiss_det(zmat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}), div) == BigInt(0));
}

TEST_CASE("rank mod p") {
  const std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1
  Matrix<std::uint64_t> m(3, 3);
  std::vector<long> v{1, 2, 3, 2, 4, 6, 1, 0, 1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = static_cast<std::uint64_t>(v[static_cast<std::size_t>(i * 3 + j)]);
  REQUIRE(rank_mod_p(m, p) == 2);
}

TEST_CASE("polynomial elimination pins the rank drop certificate") {
  // [[1, λ], [1, λ+λ^2]] has generic rank 2 but rank 1 at λ=0; the final
  // pivot (a maximal minor) must vanish there.
  Matrix<UPolyQ> m(2, 2);
  m.at(0, 0) = up({1});
  m.at(0, 1) = up({0, 1});
  m.at(1, 0) = up({1});
  m.at(1, 1) = up({0, 1, 1});
  auto e = bareiss_rank_upoly(m);
  REQUIRE(e.rank == 2);
  REQUIRE(e.last_pivot == up({0, 0, 1}));

  Matrix<UPolyQ> s(2, 2);
  s.at(0, 0) = up({1});
  s.at(0, 1) = up({2});
  s.at(1, 0) = up({3});
  s.at(1, 1) = up({6});
  auto e2 = bareiss_rank_upoly(s);
  REQUIRE(e2.rank == 1);
  REQUIRE(e2.last_pivot.degree() == 0);
}
