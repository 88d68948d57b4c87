#pragma once

#include "latcub/rational.hpp"

#include <vector>

namespace latcub {

// Gegenbauer polynomials Q_k for S^{n-1}, orthogonal for the weight
// (1-u^2)^{(n-3)/2} normalized to total mass 1, with <Q_k, Q_k> = Q_k(1) =
// dim Har_k(R^n).
class Gegenbauer {
 public:
  explicit Gegenbauer(int n);

  int dimension() const { return n_; }

  // dim Har_k(R^n) = C(n+k-1, n-1) - C(n+k-3, n-1).
  Integer harmonic_dimension(int k) const;

  // Monomial coefficients of Q_k (index = power of u), exact.
  const std::vector<Rational>& coefficients(int k);

  Rational value(int k, const Rational& u);
  double value(int k, double u) const;

  // Q_0(u), ..., Q_K(u) written to out[0..K].
  void values(int max_degree, double u, double* out) const;

 private:
  int n_;
  std::vector<std::vector<Rational>> poly_;  // P_k with P_k(1) = 1
  std::vector<std::vector<Rational>> q_;
  std::vector<double> h_;  // harmonic dimensions as doubles
  void extend(int k);
};

// Exact moment E[u^j] of the normalized measure.
Rational sphere_moment(int n, int j);

}  // namespace latcub
