#pragma once

#include "latcub/rational.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcub {

// a + b*sqrt(2) with rational a, b.
struct QSqrt2 {
  Rational a, b;

  QSqrt2() = default;
  QSqrt2(Rational a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
  QSqrt2(long a_) : a(a_), b(0) {}

  QSqrt2 operator+(const QSqrt2& o) const { return {a + o.a, b + o.b}; }
  QSqrt2 operator-(const QSqrt2& o) const { return {a - o.a, b - o.b}; }
  QSqrt2 operator-() const { return {-a, -b}; }
  QSqrt2 operator*(const QSqrt2& o) const { return {a * o.a + 2 * b * o.b, a * o.b + b * o.a}; }
  QSqrt2& operator+=(const QSqrt2& o) { return *this = *this + o; }
  QSqrt2& operator-=(const QSqrt2& o) { return *this = *this - o; }
  QSqrt2& operator*=(const QSqrt2& o) { return *this = *this * o; }
  QSqrt2 operator/(const QSqrt2& o) const;
  bool operator==(const QSqrt2& o) const { return a == o.a && b == o.b; }
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
  double to_double() const;
  std::string to_string() const;
};

// Square matrix over Q(sqrt 2), row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(std::size_t n) : n_(n), data_(n * n) {}
  static ExactMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  QSqrt2& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const QSqrt2& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  ExactMatrix operator*(const ExactMatrix& rhs) const;
  std::vector<QSqrt2> apply(const std::vector<QSqrt2>& x) const;
  ExactMatrix transpose() const;
  bool operator==(const ExactMatrix& rhs) const { return n_ == rhs.n_ && data_ == rhs.data_; }
  bool is_orthogonal() const;
  std::size_t hash() const;

  // Coefficients c_0..c_n of det(I - X g), c_0 = 1.
  std::vector<QSqrt2> reversed_charpoly() const;

 private:
  std::size_t n_ = 0;
  std::vector<QSqrt2> data_;
};

class GroupCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixGroup {
  std::size_t n = 0;
  std::vector<ExactMatrix> generators;
  std::vector<ExactMatrix> elements;  // identity first
  std::size_t order() const { return elements.size(); }
};

// Breadth-first closure under right multiplication by the generators.
// Throws std::invalid_argument for non-orthogonal generators and
// GroupCapExceeded when more than `cap` elements appear.
MatrixGroup group_closure(const std::vector<ExactMatrix>& generators, std::size_t cap = 100000);

// x -> x - 2 <x,a>/<a,a> a
ExactMatrix reflection(const std::vector<Rational>& alpha);

// The 24 reflection vectors of W(F4) (one per pair ±a).
std::vector<std::vector<Rational>> f4_reflection_vectors();

// The orthogonal map exchanging D4 and sqrt(2) D4* in standard coordinates.
ExactMatrix d4_exchange_matrix();

MatrixGroup weyl_f4();
// W(F4) together with the exchange matrix T.
MatrixGroup d4_union_group();

// Named groups used on the command line: "F4" and "F4T".
MatrixGroup named_group(const std::string& name);

// dim Pol_k^G for k <= max_degree, by averaging 1 / det(I - X g).
std::vector<Rational> molien_series(const MatrixGroup& g, int max_degree);

struct InvariantDims {
  std::vector<long> d;  // d[k] = dim Har_k^G
};
InvariantDims molien_invariant_dims(const MatrixGroup& g, int max_degree);

// The F4 invariants H2, H6, H8, H12 evaluated exactly.
QSqrt2 invariant_eval(const std::string& name, const std::vector<QSqrt2>& x);

}  // namespace latcub
