#pragma once

#include "pencillab/rational.hpp"
#include "pencillab/upoly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pencillab {

template <class T>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T{}) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
  }

 private:
  int r_, c_;
  std::vector<T> a_;
};

// Gaussian elimination over a field; returns rank, leaves A in row echelon
// form. Field ops are allowed to throw (dynamic evaluation relies on it).
template <class K>
int echelon_rank(Matrix<K>& A) {
  int rank = 0;
  for (int col = 0; col < A.cols() && rank < A.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < A.rows(); ++i)
      if (!is_zero(A.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    A.swap_rows(rank, piv);
    K inv = K(1) / A.at(rank, col);
    for (int j = col; j < A.cols(); ++j) A.at(rank, j) = inv * A.at(rank, j);
    for (int i = 0; i < A.rows(); ++i) {
      if (i == rank || is_zero(A.at(i, col))) continue;
      K f = A.at(i, col);
      for (int j = col; j < A.cols(); ++j) A.at(i, j) = A.at(i, j) - f * A.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Basis of the right nullspace over a field, one vector per free column.
template <class K>
std::vector<std::vector<K>> nullspace(Matrix<K> A) {
  int rank = echelon_rank(A);
  std::vector<int> pivot_col;
  pivot_col.reserve(static_cast<std::size_t>(rank));
  std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
  for (int i = 0, col = 0; i < rank; ++i) {
    while (col < A.cols() && is_zero(A.at(i, col))) ++col;
    pivot_col.push_back(col);
    is_pivot[static_cast<std::size_t>(col)] = true;
  }
  std::vector<std::vector<K>> basis;
  for (int j = 0; j < A.cols(); ++j) {
    if (is_pivot[static_cast<std::size_t>(j)]) continue;
    std::vector<K> v(static_cast<std::size_t>(A.cols()), K{});
    v[static_cast<std::size_t>(j)] = K(1);
    for (int i = 0; i < rank; ++i)
      v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = -A.at(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Fraction-free rank over Z (Bareiss). Entries stay integral throughout; the
// working values are minors of the input, so no row rescaling is allowed.
inline int bareiss_rank_int(Matrix<BigInt> A) {
  BigInt prev = 1;
  int rank = 0;
  for (int col = 0; col < A.cols() && rank < A.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < A.rows(); ++i) {
      if (A.at(i, col) == 0) continue;
      if (piv < 0 || int_abs(A.at(i, col)) < int_abs(A.at(piv, col))) piv = i;
    }
    if (piv < 0) continue;
    A.swap_rows(rank, piv);
    const BigInt p = A.at(rank, col);
    for (int i = rank + 1; i < A.rows(); ++i) {
      const BigInt f = A.at(i, col);
      for (int j = col + 1; j < A.cols(); ++j)
        A.at(i, j) = (p * A.at(i, j) - f * A.at(rank, j)) / prev;
      A.at(i, col) = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

// Same elimination over Q[λ]. Divisions are exact by the Bareiss identity.
// The returned pivot is the last one: a maximal nonzero minor of the input,
// so every specialization λ* that lowers the rank is among its roots.
struct UPolyElimination {
  int rank = 0;
  UPolyQ last_pivot;  // zero polynomial when rank is 0
};

inline UPolyElimination bareiss_rank_upoly(Matrix<UPolyQ> A) {
  UPolyElimination out;
  UPolyQ prev = UPolyQ::constant(BigRational(1));
  for (int col = 0; col < A.cols() && out.rank < A.rows(); ++col) {
    int piv = -1;
    for (int i = out.rank; i < A.rows(); ++i) {
      if (A.at(i, col).zero()) continue;
      if (piv < 0 || A.at(i, col).degree() < A.at(piv, col).degree()) piv = i;
    }
    if (piv < 0) continue;
    A.swap_rows(out.rank, piv);
    const UPolyQ p = A.at(out.rank, col);
    for (int i = out.rank + 1; i < A.rows(); ++i) {
      const UPolyQ f = A.at(i, col);
      // Rows with a zero in the pivot column still need the p/prev rescale
      // to stay minors of the input.
      for (int j = col + 1; j < A.cols(); ++j)
        A.at(i, j) = uni_div_exact(p * A.at(i, j) - f * A.at(out.rank, j), prev);
      A.at(i, col) = UPolyQ{};
    }
    prev = p;
    out.last_pivot = p;
    ++out.rank;
  }
  return out;
}

// Bareiss determinant over an integral domain; div must divide exactly.
template <class R, class DivFn>
R bareiss_det(Matrix<R> A, DivFn div) {
  const int n = A.rows();
  if (n != A.cols()) throw std::logic_error("determinant of non-square matrix");
  if (n == 0) return R(1);
  R prev = R(1);
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!is_zero(A.at(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) return R{};
    if (piv != k) {
      A.swap_rows(k, piv);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        A.at(i, j) = div(A.at(k, k) * A.at(i, j) - A.at(i, k) * A.at(k, j), prev);
      A.at(i, k) = R{};
    }
    prev = A.at(k, k);
  }
  R d = A.at(n - 1, n - 1);
  return negate ? -d : d;
}

// Rank over Z/p for a prime below 2^62; product arguments fit __int128.
inline int rank_mod_p(Matrix<std::uint64_t> A, std::uint64_t p) {
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (int col = 0; col < A.cols() && rank < A.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < A.rows(); ++i)
      if (A.at(i, col) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    A.swap_rows(rank, piv);
    const std::uint64_t inv = powmod(A.at(rank, col) % p, p - 2);
    for (int i = rank + 1; i < A.rows(); ++i) {
      const std::uint64_t f = mulmod(A.at(i, col) % p, inv);
      if (f == 0) continue;
      for (int j = col; j < A.cols(); ++j) {
        std::uint64_t sub = mulmod(f, A.at(rank, j) % p);
        A.at(i, j) = (A.at(i, j) % p + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace pencillab
