#pragma once

#include "latcub/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace latcub {

// Dense matrix with exact rational entries, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit RatMatrix(const std::vector<RatVec>& rows);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatMatrix transpose() const;

  RatMatrix operator*(const RatMatrix& rhs) const;
  RatVec operator*(const RatVec& v) const;
  RatMatrix operator*(const Rational& s) const;
  bool operator==(const RatMatrix& rhs) const = default;

  bool is_symmetric() const;
  bool is_integral() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(RatMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
std::size_t rank(RatMatrix m);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

// Basis of {x : m x = 0}, one vector per free column (RREF-normalized).
std::vector<RatVec> nullspace(const RatMatrix& m);

enum class SolveStatus { unique, underdetermined, inconsistent };

struct LinearSolution {
  SolveStatus status = SolveStatus::inconsistent;
  RatVec x;  // a particular solution when consistent
};

// Exact solve of a (possibly overdetermined) system a x = b.
LinearSolution solve_exact(const RatMatrix& a, const RatVec& b);

Rational dot(const RatVec& a, const RatVec& b);

// x^T m y.
Rational bilinear(const RatVec& x, const RatMatrix& m, const RatVec& y);

// Positive definiteness via exact LDL^T pivots.
bool is_positive_definite(const RatMatrix& m);

// Row-style Hermite normal form of the Z-span of integer generators;
// zero rows are dropped so the result is a basis.
std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> generators);

}  // namespace latcub
