#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pencillab {

// Exact scalars. BigRational is always reduced with positive denominator;
// zero is 0/1. The backing type maintains these invariants on every op.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt num(const BigRational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const BigRational& r) { return boost::multiprecision::denominator(r); }

inline bool is_zero(const BigRational& r) { return r.is_zero(); }
inline bool is_zero(const BigInt& n) { return n.is_zero(); }

inline BigInt int_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt int_lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }
inline BigInt int_abs(const BigInt& a) { return boost::multiprecision::abs(a); }

inline std::string to_string(const BigInt& n) { return n.str(); }

// Canonical text form: "3", "-3", "1/2", "-1/2".
inline std::string to_string(const BigRational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

}  // namespace pencillab
