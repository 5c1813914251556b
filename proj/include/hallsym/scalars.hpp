#pragma once
/**
 * @file scalars.hpp
 * @brief Exact integer and rational scalars used throughout the library.
 *
 * All arithmetic in this project is exact: no floating point anywhere.
 * Integers and rationals are arbitrary precision.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hallsym {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Render a rational in lowest terms: "3", "-5/2", "0".
inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

/// Parse "num", "num/den" (den > 0 after normalization). Throws on junk.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("rat_parse: zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("rat_parse: malformed rational '" + s + "'");
  }
}

/// Exact power with non-negative exponent.
inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    Rat inv = Rat(denominator(base), numerator(base));
    return rat_pow(inv, -e);
  }
  Rat acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline Int int_pow(Int base, long e) {
  if (e < 0) throw std::domain_error("int_pow: negative exponent");
  Int acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline Int factorial(long n) {
  Int acc(1);
  for (long k = 2; k <= n; ++k) acc *= k;
  return acc;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return Int(0);
  Int acc(1);
  for (long i = 0; i < k; ++i) { acc *= (n - i); acc /= (i + 1); }
  return acc;
}

}  // namespace hallsym
