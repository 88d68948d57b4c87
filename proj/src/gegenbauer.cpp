#include "latcub/gegenbauer.hpp"

#include <stdexcept>

namespace latcub {

Gegenbauer::Gegenbauer(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("Gegenbauer: dimension must be at least 2");
  poly_.push_back({Rational(1)});
  poly_.push_back({Rational(0), Rational(1)});
  h_.resize(64);
  for (int k = 0; k < static_cast<int>(h_.size()); ++k) h_[k] = harmonic_dimension(k).get_d();
}

Integer Gegenbauer::harmonic_dimension(int k) const {
  if (k < 0) return 0;
  return binomial(n_ + k - 1, n_ - 1) - binomial(n_ + k - 3, n_ - 1);
}

void Gegenbauer::extend(int k) {
  // (k+n-2) P_{k+1} = (2k+n-2) u P_k - k P_{k-1}
  while (static_cast<int>(poly_.size()) <= k) {
    const int j = static_cast<int>(poly_.size()) - 1;
    const auto& a = poly_[j];
    const auto& b = poly_[j - 1];
    std::vector<Rational> next(a.size() + 1, Rational(0));
    Rational c1(2 * j + n_ - 2, j + n_ - 2), c0(j, j + n_ - 2);
    c1.canonicalize();
    c0.canonicalize();
    for (std::size_t i = 0; i < a.size(); ++i) next[i + 1] += c1 * a[i];
    for (std::size_t i = 0; i < b.size(); ++i) next[i] -= c0 * b[i];
    poly_.push_back(std::move(next));
  }
}

const std::vector<Rational>& Gegenbauer::coefficients(int k) {
  if (k < 0) throw std::invalid_argument("Gegenbauer: negative degree");
  extend(k);
  while (static_cast<int>(q_.size()) <= k) {
    const int j = static_cast<int>(q_.size());
    Rational h(harmonic_dimension(j));
    std::vector<Rational> c = poly_[j];
    for (auto& x : c) x *= h;
    q_.push_back(std::move(c));
  }
  return q_[k];
}

Rational Gegenbauer::value(int k, const Rational& u) {
  const auto& c = coefficients(k);
  Rational s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * u + c[i];
  return s;
}

double Gegenbauer::value(int k, double u) const {
  std::vector<double> out(static_cast<std::size_t>(k) + 1);
  values(k, u, out.data());
  return out[k];
}

void Gegenbauer::values(int max_degree, double u, double* out) const {
  if (max_degree >= static_cast<int>(h_.size())) throw std::invalid_argument("Gegenbauer: degree too large");
  double p0 = 1, p1 = u;
  out[0] = 1;
  if (max_degree >= 1) out[1] = h_[1] * u;
  for (int k = 1; k < max_degree; ++k) {
    double p2 = ((2.0 * k + n_ - 2) * u * p1 - k * p0) / (k + n_ - 2);
    out[k + 1] = h_[k + 1] * p2;
    p0 = p1;
    p1 = p2;
  }
}

Rational sphere_moment(int n, int j) {
  if (j % 2) return 0;
  Rational m = 1;
  for (int i = 0; i < j / 2; ++i) m *= Rational(2 * i + 1, n + 2 * i);
  m.canonicalize();
  return m;
}

}  // namespace latcub
