#pragma once

#include "latcub/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace latcub {

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated power series in q with exact rational coefficients.
//
// Graded by the integer exponent m (the norm), so q^m stands for the
// shell of norm m. Coefficients are exact for every m <= truncation();
// nothing beyond that is ever reported.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(int truncation);
  QSeries(std::vector<Rational> coefficients, int truncation);

  static QSeries one(int truncation);
  static QSeries monomial(int exponent, const Rational& coefficient, int truncation);

  int truncation() const { return trunc_; }
  const Rational& coeff(int m) const;
  void set_coeff(int m, Rational value);

  // Smallest m with a nonzero coefficient, or -1 for the zero series.
  int valuation() const;
  bool is_zero() const { return valuation() < 0; }

  QSeries truncated(int n) const;

  QSeries operator+(const QSeries& rhs) const;
  QSeries operator-(const QSeries& rhs) const;
  QSeries operator-() const;
  QSeries operator*(const QSeries& rhs) const;
  QSeries operator*(const Rational& s) const;
  QSeries pow(int exponent) const;

  bool operator==(const QSeries& rhs) const = default;

  std::vector<Rational> coefficients() const { return coeffs_; }

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
  int trunc_ = 0;
};

inline QSeries operator*(const Rational& s, const QSeries& f) { return f * s; }

// (eta(z) eta(ell z))^k1 in the variable q = exp(i pi z).
QSeries eta_product(int ell, int k1, int truncation);

// Normalized Eisenstein series E_k (k = 4 or 6) in the q^2 grading.
QSeries eisenstein(int k, int truncation);

}  // namespace latcub
