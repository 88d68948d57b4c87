#include "latcub/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace latcub {

RatMatrix::RatMatrix(const std::vector<RatVec>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("RatMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVec RatMatrix::row(std::size_t i) const {
  return RatVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("RatMatrix: shape mismatch in product");
  RatMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("RatMatrix: shape mismatch in product");
  RatVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
  RatMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RatMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

Rational determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<RatVec> nullspace(const RatMatrix& m) {
  RatMatrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve_exact(const RatMatrix& a, const RatVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_exact: shape mismatch");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = rref(aug);
  LinearSolution sol;
  if (!piv.empty() && piv.back() == n) {
    sol.status = SolveStatus::inconsistent;
    return sol;
  }
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) sol.x[piv[i]] = aug(i, n);
  sol.status = piv.size() == n ? SolveStatus::unique : SolveStatus::underdetermined;
  return sol;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational bilinear(const RatVec& x, const RatMatrix& m, const RatVec& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row += m(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

bool is_positive_definite(const RatMatrix& m) {
  if (!m.is_symmetric()) return false;
  RatMatrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    if (a(c, c) <= 0) return false;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return true;
}

std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> gens) {
  if (gens.empty()) return {};
  const std::size_t n = gens.front().size();
  std::vector<std::vector<Integer>> basis;
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < gens.size(); ++c) {
    // Euclid on column c among rows top..end
    while (true) {
      std::size_t best = gens.size();
      for (std::size_t r = top; r < gens.size(); ++r) {
        if (gens[r][c] == 0) continue;
        if (best == gens.size() || abs(gens[r][c]) < abs(gens[best][c])) best = r;
      }
      if (best == gens.size()) break;
      std::swap(gens[top], gens[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < gens.size(); ++r) {
        if (gens[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), gens[r][c].get_mpz_t(), gens[top][c].get_mpz_t());
        for (std::size_t j = c; j < n; ++j) gens[r][j] -= q * gens[top][j];
        if (gens[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (gens[top][c] == 0) continue;
    if (gens[top][c] < 0)
      for (auto& x : gens[top]) x = -x;
    for (std::size_t r = 0; r < top; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), gens[r][c].get_mpz_t(), gens[top][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < n; ++j) gens[r][j] -= q * gens[top][j];
    }
    ++top;
  }
  basis.assign(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(top));
  return basis;
}

}  // namespace latcub
