#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace abelaut {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline Integer floor_of(const Rational& r) {
  Integer n = numerator_of(r), d = denominator_of(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer n = numerator_of(r), d = denominator_of(r);
  Integer q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

/// "num/den" with den > 0; integers still carry "/1" so the wire format is uniform.
inline std::string to_fraction_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Integers print bare, everything else as "num/den".
inline std::string to_display_string(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return to_fraction_string(r);
}

inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

inline std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<std::int64_t>();
}

}  // namespace abelaut
