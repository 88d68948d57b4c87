#include "latcub/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace latcub {

QSeries::QSeries(int truncation) : coeffs_(), trunc_(truncation) {
  if (truncation < 0) throw TruncationError("QSeries: negative truncation");
  coeffs_.assign(static_cast<std::size_t>(truncation) + 1, Rational(0));
}

QSeries::QSeries(std::vector<Rational> coefficients, int truncation) : QSeries(truncation) {
  if (coefficients.size() > coeffs_.size()) {
    for (std::size_t m = coeffs_.size(); m < coefficients.size(); ++m)
      if (coefficients[m] != 0) throw TruncationError("QSeries: coefficient beyond truncation");
    coefficients.resize(coeffs_.size());
  }
  std::copy(coefficients.begin(), coefficients.end(), coeffs_.begin());
}

QSeries QSeries::one(int truncation) { return monomial(0, 1, truncation); }

QSeries QSeries::monomial(int exponent, const Rational& coefficient, int truncation) {
  QSeries s(truncation);
  if (exponent < 0) throw std::invalid_argument("QSeries: negative exponent");
  if (exponent <= truncation) s.coeffs_[static_cast<std::size_t>(exponent)] = coefficient;
  return s;
}

const Rational& QSeries::coeff(int m) const {
  if (m < 0 || m > trunc_)
    throw TruncationError("QSeries: coefficient q^" + std::to_string(m) + " is beyond truncation " +
                          std::to_string(trunc_));
  return coeffs_[static_cast<std::size_t>(m)];
}

void QSeries::set_coeff(int m, Rational value) {
  if (m < 0 || m > trunc_) throw TruncationError("QSeries: set_coeff beyond truncation");
  coeffs_[static_cast<std::size_t>(m)] = std::move(value);
}

int QSeries::valuation() const {
  for (std::size_t m = 0; m < coeffs_.size(); ++m)
    if (coeffs_[m] != 0) return static_cast<int>(m);
  return -1;
}

QSeries QSeries::truncated(int n) const {
  if (n > trunc_) throw TruncationError("QSeries: cannot extend truncation");
  QSeries s(n);
  std::copy(coeffs_.begin(), coeffs_.begin() + n + 1, s.coeffs_.begin());
  return s;
}

QSeries QSeries::operator+(const QSeries& rhs) const {
  const int n = std::min(trunc_, rhs.trunc_);
  QSeries s(n);
  for (int m = 0; m <= n; ++m) s.coeffs_[m] = coeffs_[m] + rhs.coeffs_[m];
  return s;
}

QSeries QSeries::operator-(const QSeries& rhs) const {
  const int n = std::min(trunc_, rhs.trunc_);
  QSeries s(n);
  for (int m = 0; m <= n; ++m) s.coeffs_[m] = coeffs_[m] - rhs.coeffs_[m];
  return s;
}

QSeries QSeries::operator-() const { return *this * Rational(-1); }

QSeries QSeries::operator*(const QSeries& rhs) const {
  const int n = std::min(trunc_, rhs.trunc_);
  QSeries s(n);
  for (int i = 0; i <= n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      s.coeffs_[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return s;
}

QSeries QSeries::operator*(const Rational& k) const {
  QSeries s = *this;
  for (auto& c : s.coeffs_) c *= k;
  return s;
}

QSeries QSeries::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("QSeries::pow: negative exponent");
  QSeries result = one(trunc_);
  QSeries base = *this;
  while (exponent) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

std::string QSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int m = 0; m <= trunc_; ++m) {
    const Rational& c = coeffs_[m];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m == 0 || mag != 1) out << latcub::to_string(mag);
    if (m > 0) out << (m == 1 ? "q" : "q^" + std::to_string(m));
  }
  if (first) out << "0";
  out << " + O(q^" << trunc_ + 1 << ")";
  return out.str();
}

namespace {

// prod_{m>=1} (1 - q^{step m})^k up to degree n.
std::vector<Integer> euler_power(int step, int k, int n) {
  std::vector<Integer> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int m = 1; step * m <= n; ++m) {
    const int e = step * m;
    for (int rep = 0; rep < k; ++rep)
      for (int d = n; d >= e; --d) p[d] -= p[d - e];
  }
  return p;
}

Integer divisor_power_sum(int m, int power) {
  Integer s = 0;
  for (int d = 1; d <= m; ++d) {
    if (m % d) continue;
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(power));
    s += t;
  }
  return s;
}

}  // namespace

QSeries eta_product(int ell, int k1, int truncation) {
  if (ell < 1 || k1 < 1) throw std::invalid_argument("eta_product: ell and k1 must be positive");
  if (truncation < 2) throw TruncationError("eta_product: truncation must be at least 2");
  if ((k1 * (1 + ell)) % 12 != 0)
    throw std::invalid_argument("eta_product: leading exponent k1(1+ell)/12 is not an integer");
  const int lead = k1 * (1 + ell) / 12;
  QSeries s(truncation);
  if (lead > truncation) return s;
  const int n = truncation - lead;
  auto a = euler_power(2, k1, n);
  auto b = euler_power(2 * ell, k1, n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j] == 0) continue;
      Rational c = s.coeff(lead + i + j) + Rational(a[i] * b[j]);
      s.set_coeff(lead + i + j, c);
    }
  }
  return s;
}

QSeries eisenstein(int k, int truncation) {
  if (truncation < 0) throw TruncationError("eisenstein: negative truncation");
  long factor = 0;
  if (k == 4) {
    factor = 240;
  } else if (k == 6) {
    factor = -504;
  } else {
    throw std::invalid_argument("eisenstein: only weights 4 and 6 are supported");
  }
  QSeries s = QSeries::one(truncation);
  for (int m = 1; 2 * m <= truncation; ++m)
    s.set_coeff(2 * m, Rational(factor * divisor_power_sum(m, k - 1)));
  return s;
}

}  // namespace latcub
