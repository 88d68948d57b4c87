#include "latcub/rational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace latcub {

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("pow: zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

bool is_rational_square(const Rational& value, Rational* root) {
  if (value < 0) return false;
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  if (root) {
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    *root = Rational(rn, rd);
    root->canonicalize();
  }
  return true;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_decimal(const Rational& value, int significant_digits) {
  mpf_class f(value, 256);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(significant_digits));
  if (digits.empty() || digits == "0") return "0";
  bool negative = digits[0] == '-';
  if (negative) digits.erase(0, 1);
  std::ostringstream out;
  if (negative) out << '-';
  // scientific notation keeps tiny weights readable
  out << digits[0];
  if (digits.size() > 1) out << '.' << digits.substr(1);
  long e10 = static_cast<long>(exp) - 1;
  if (e10 != 0) out << 'e' << e10;
  return out.str();
}

double to_double(const Rational& value) { return value.get_d(); }

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer common_denominator(const RatVec& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  }
  return l;
}

std::vector<Integer> primitive_direction(const RatVec& values) {
  Integer den = common_denominator(values);
  std::vector<Integer> out;
  out.reserve(values.size());
  Integer g = 0;
  for (const auto& v : values) {
    Integer x = v.get_num() * (den / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.push_back(x);
  }
  if (g != 0 && g != 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

}  // namespace latcub
