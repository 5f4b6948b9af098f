#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfock {

/// Exact rational scalar used throughout the library. Arbitrary-precision
/// numerator/denominator, so identity checks are exact rather than
/// floating-point-close.
using Rational = boost::multiprecision::cpp_rational;

/// Canonical text form: "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& value) { return value.str(); }

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument on
/// malformed input or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  try {
    return Rational(std::string(text));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
}

inline Rational rational_pow(const Rational& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Rational result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace qfock
