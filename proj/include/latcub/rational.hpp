#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace latcub {

using Integer = mpz_class;
using Rational = mpq_class;

using RatVec = std::vector<Rational>;
using IntVec = std::vector<std::int64_t>;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, int exponent);

// Exact square test; on success writes the rational square root.
bool is_rational_square(const Rational& value, Rational* root = nullptr);

// "p/q" or "p" (also accepts a plain decimal integer).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& value);

// Decimal rendering with the requested significant digits.
std::string to_decimal(const Rational& value, int significant_digits = 17);

double to_double(const Rational& value);

Integer binomial(long n, long k);

// Least common multiple of all denominators.
Integer common_denominator(const RatVec& values);

// Scales a rational vector to the primitive integer vector on the same ray.
std::vector<Integer> primitive_direction(const RatVec& values);

}  // namespace latcub
