#include "latcub/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

namespace latcub {

QSqrt2 QSqrt2::operator/(const QSqrt2& o) const {
  const Rational den = o.a * o.a - 2 * o.b * o.b;
  if (den == 0) throw std::domain_error("QSqrt2: division by zero");
  QSqrt2 conj{o.a, -o.b};
  QSqrt2 num = *this * conj;
  return {num.a / den, num.b / den};
}

double QSqrt2::to_double() const { return a.get_d() + b.get_d() * std::sqrt(2.0); }

std::string QSqrt2::to_string() const {
  if (b == 0) return a.get_str();
  std::string s = a == 0 ? "" : a.get_str() + (b > 0 ? "+" : "");
  return s + b.get_str() + "*sqrt2";
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  ExactMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const QSqrt2& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!rhs(k, j).is_zero()) out(i, j) += x * rhs(k, j);
    }
  return out;
}

std::vector<QSqrt2> ExactMatrix::apply(const std::vector<QSqrt2>& x) const {
  std::vector<QSqrt2> y(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
  return y;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool ExactMatrix::is_orthogonal() const { return *this * transpose() == identity(n_); }

std::size_t ExactMatrix::hash() const {
  std::size_t h = n_;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& x : data_) {
    mix(mpz_get_ui(x.a.get_num_mpz_t()));
    mix(mpz_get_ui(x.a.get_den_mpz_t()));
    mix(mpz_sgn(x.a.get_num_mpz_t()) + 2);
    mix(mpz_get_ui(x.b.get_num_mpz_t()));
    mix(mpz_get_ui(x.b.get_den_mpz_t()));
    mix(mpz_sgn(x.b.get_num_mpz_t()) + 2);
  }
  return h;
}

std::vector<QSqrt2> ExactMatrix::reversed_charpoly() const {
  // Faddeev-LeVerrier: det(xI - A) = sum c_i x^i
  const std::size_t n = n_;
  std::vector<QSqrt2> c(n + 1);
  c[n] = 1;
  ExactMatrix m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ExactMatrix next = *this * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = next;
    ExactMatrix am = *this * m;
    QSqrt2 tr;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = tr * QSqrt2(Rational(-1, static_cast<long>(k)));
  }
  std::vector<QSqrt2> r(n + 1);
  for (std::size_t j = 0; j <= n; ++j) r[j] = c[n - j];
  return r;
}

MatrixGroup group_closure(const std::vector<ExactMatrix>& generators, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("group_closure: no generators");
  const std::size_t n = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != n) throw std::invalid_argument("group_closure: generators of different sizes");
    if (!g.is_orthogonal()) throw std::invalid_argument("group_closure: generator is not orthogonal");
  }
  MatrixGroup grp;
  grp.n = n;
  grp.generators = generators;
  grp.elements.push_back(ExactMatrix::identity(n));
  std::unordered_multimap<std::size_t, std::size_t> index;
  index.emplace(grp.elements.front().hash(), 0);
  auto find = [&](const ExactMatrix& m, std::size_t h) {
    auto range = index.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (grp.elements[it->second] == m) return true;
    return false;
  };
  for (std::size_t next = 0; next < grp.elements.size(); ++next) {
    for (const auto& g : generators) {
      ExactMatrix p = grp.elements[next] * g;
      const std::size_t h = p.hash();
      if (find(p, h)) continue;
      if (grp.elements.size() >= cap)
        throw GroupCapExceeded("group_closure: more than " + std::to_string(cap) + " elements");
      index.emplace(h, grp.elements.size());
      grp.elements.push_back(std::move(p));
    }
  }
  return grp;
}

ExactMatrix reflection(const std::vector<Rational>& alpha) {
  const std::size_t n = alpha.size();
  Rational aa = 0;
  for (const auto& x : alpha) aa += x * x;
  if (aa == 0) throw std::invalid_argument("reflection: zero vector");
  ExactMatrix m = ExactMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= QSqrt2(2 * alpha[i] * alpha[j] / aa);
  return m;
}

std::vector<std::vector<Rational>> f4_reflection_vectors() {
  std::vector<std::vector<Rational>> out;
  // (1,0,0,0) and permutations: 4
  for (int i = 0; i < 4; ++i) {
    std::vector<Rational> v(4, Rational(0));
    v[i] = 1;
    out.push_back(v);
  }
  // (1,±1,0,0) and permutations: 12
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int s : {1, -1}) {
        std::vector<Rational> v(4, Rational(0));
        v[i] = 1;
        v[j] = s;
        out.push_back(v);
      }
  // (1,±1,±1,±1): 8
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Rational> v(4, Rational(1));
    for (int k = 0; k < 3; ++k)
      if (mask >> k & 1) v[k + 1] = -1;
    out.push_back(v);
  }
  return out;
}

ExactMatrix d4_exchange_matrix() {
  const QSqrt2 h(0, Rational(1, 2));  // sqrt(2)/2
  ExactMatrix t(4);
  t(0, 0) = -h;
  t(0, 1) = h;
  t(1, 0) = -h;
  t(1, 1) = -h;
  t(2, 2) = h;
  t(2, 3) = h;
  t(3, 2) = -h;
  t(3, 3) = h;
  return t;
}

MatrixGroup weyl_f4() {
  std::vector<ExactMatrix> gens;
  for (const auto& a : f4_reflection_vectors()) gens.push_back(reflection(a));
  return group_closure(gens);
}

MatrixGroup d4_union_group() {
  std::vector<ExactMatrix> gens;
  for (const auto& a : f4_reflection_vectors()) gens.push_back(reflection(a));
  gens.push_back(d4_exchange_matrix());
  return group_closure(gens);
}

MatrixGroup named_group(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, MatrixGroup> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  MatrixGroup g;
  if (name == "F4")
    g = weyl_f4();
  else if (name == "F4T")
    g = d4_union_group();
  else
    throw std::invalid_argument("unknown group '" + name + "' (expected F4 or F4T)");
  cache.emplace(name, g);
  return g;
}

std::vector<Rational> molien_series(const MatrixGroup& g, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("molien_series: negative degree");
  const std::size_t len = static_cast<std::size_t>(max_degree) + 1;
  // elements with the same characteristic polynomial contribute the same series
  std::map<std::vector<std::string>, std::pair<std::vector<QSqrt2>, long>> classes;
  for (const auto& e : g.elements) {
    auto p = e.reversed_charpoly();
    std::vector<std::string> key;
    for (const auto& c : p) key.push_back(c.to_string());
    auto [it, fresh] = classes.try_emplace(key, p, 0);
    ++it->second.second;
  }
  std::vector<QSqrt2> total(len);
  for (const auto& [key, entry] : classes) {
    const auto& p = entry.first;
    std::vector<QSqrt2> s(len);
    s[0] = 1;
    for (std::size_t m = 1; m < len; ++m)
      for (std::size_t j = 1; j <= std::min(m, p.size() - 1); ++j) s[m] -= p[j] * s[m - j];
    for (std::size_t m = 0; m < len; ++m) total[m] += s[m] * QSqrt2(Rational(entry.second));
  }
  std::vector<Rational> out(len);
  const Rational order(static_cast<long>(g.order()));
  for (std::size_t m = 0; m < len; ++m) {
    if (total[m].b != 0) throw std::logic_error("molien_series: irrational coefficient");
    out[m] = total[m].a / order;
  }
  return out;
}

InvariantDims molien_invariant_dims(const MatrixGroup& g, int max_degree) {
  auto pol = molien_series(g, max_degree);
  InvariantDims out;
  for (int k = 0; k <= max_degree; ++k) {
    Rational d = pol[k] - (k >= 2 ? pol[k - 2] : Rational(0));
    if (d.get_den() != 1 || d < 0) throw std::logic_error("molien_invariant_dims: invalid dimension");
    out.d.push_back(d.get_num().get_si());
  }
  return out;
}

namespace {

QSqrt2 power(const QSqrt2& x, int e) {
  QSqrt2 r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Sum of the distinct coordinate permutations of x^e.
QSqrt2 sym(const std::vector<QSqrt2>& x, std::vector<int> e) {
  e.resize(x.size(), 0);
  std::sort(e.begin(), e.end());
  QSqrt2 s;
  do {
    QSqrt2 t = 1;
    for (std::size_t i = 0; i < x.size(); ++i) t *= power(x[i], e[i]);
    s += t;
  } while (std::next_permutation(e.begin(), e.end()));
  return s;
}

}  // namespace

QSqrt2 invariant_eval(const std::string& name, const std::vector<QSqrt2>& x) {
  if (x.size() != 4) throw std::invalid_argument("invariant_eval: expects a point in dimension 4");
  const QSqrt2 h2 = sym(x, {2});
  if (name == "H2") return h2;
  const QSqrt2 h6 = sym(x, {4, 2}) - QSqrt2(3) * sym(x, {2, 2, 2});
  if (name == "H6") return QSqrt2(8) * h6 - power(h2, 3);
  const QSqrt2 h8 = sym(x, {8}) + QSqrt2(14) * sym(x, {4, 4}) + QSqrt2(168) * sym(x, {2, 2, 2, 2});
  if (name == "H8") return QSqrt2(10) * h8 - QSqrt2(7) * power(h2, 4);
  if (name == "H12") {
    const QSqrt2 h12 = sym(x, {12}) + QSqrt2(22) * sym(x, {6, 6}) + QSqrt2(165) * sym(x, {4, 4, 4}) +
                       QSqrt2(330) * sym(x, {6, 2, 2, 2}) + QSqrt2(330) * sym(x, {4, 4, 2, 2});
    return QSqrt2(64) * h12 - QSqrt2(55) * h8 * power(h2, 2) - QSqrt2(176) * h6 * h6 +
           QSqrt2(220) * h6 * power(h2, 3) - QSqrt2(11) * power(h2, 6);
  }
  throw std::invalid_argument("invariant_eval: unknown invariant '" + name + "'");
}

}  // namespace latcub
