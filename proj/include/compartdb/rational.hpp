#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "compartdb/fp.hpp"

namespace compartdb {

// Exact arbitrary-precision rationals. cpp_rational keeps the denominator
// positive and the fraction reduced, which is exactly the invariant we need.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Image of a rational in Fp; throws std::domain_error when the denominator
/// vanishes mod p.
inline std::uint32_t rational_mod(const Rational& r, const PrimeField& f) {
  const std::uint32_t p = f.p();
  BigInt num = numerator(r) % p;
  if (num < 0) num += p;
  std::uint32_t n = num.convert_to<std::uint32_t>();
  BigInt den = denominator(r) % p;
  std::uint32_t d = den.convert_to<std::uint32_t>();
  if (d == 0) throw std::domain_error("rational_mod: denominator divisible by p");
  return d == 1 ? n : f.mul(n, f.inv(d));
}

}  // namespace compartdb
