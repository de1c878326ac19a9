#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

namespace pentagram {

// Exact scalar of the rational pipeline. Values are kept canonical (reduced,
// positive denominator) by every operation below.
using Rational = mpq_class;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

// Accepts "p/q", "p" and surrounding whitespace. Throws Error(InputError).
Rational parse_rational(std::string_view text);

// Always "p/q", including integers ("3/1").
std::string format_rational(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(double x) { return (x > 0.0) - (x < 0.0); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <Scalar T>
T from_rational(const Rational& q) {
  if constexpr (is_exact_v<T>) {
    return q;
  } else {
    return q.get_d();
  }
}

// Integer power with negative exponents allowed (base must be nonzero then).
template <Scalar T>
T power(const T& base, int exponent) {
  T result(1);
  T b = base;
  unsigned e = exponent < 0 ? static_cast<unsigned>(-exponent) : static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  if (exponent < 0) {
    T inv = T(1) / result;
    return inv;
  }
  return result;
}

}  // namespace pentagram
