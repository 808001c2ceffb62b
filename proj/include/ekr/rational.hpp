#pragma once

// Exact rationals for densities. Always reduced; never converted to floating
// point except for display.

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ekr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::size_t num, std::size_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "3/2", or "3" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  auto d = denominator_of(r);
  if (d == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + d.str();
}

}  // namespace ekr
