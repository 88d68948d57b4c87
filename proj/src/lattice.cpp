#include "latcub/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace latcub {

namespace {

using I64Matrix = std::vector<std::vector<std::int64_t>>;

// Writes s = c^2 * r with r a squarefree positive integer; returns r and c.
Integer squarefree_part(const Rational& s, Rational* factor) {
  if (s <= 0) throw std::invalid_argument("scale must be positive");
  Integer r = s.get_num() * s.get_den();
  Rational c(1, s.get_den());
  Integer p = 2;
  Integer sq;
  while (true) {
    sq = p * p;
    if (sq > r) break;
    while (r % sq == 0) {
      r /= sq;
      c *= p;
    }
    ++p;
    if (p > 100000) break;  // scales here are tiny; leave any large square in place
  }
  c.canonicalize();
  if (factor) *factor = c;
  return r;
}

struct ScaledBasis {
  RatMatrix basis;
  Rational scale2;
};

ScaledBasis normalize_scale(const RatMatrix& basis, const Rational& scale2) {
  Rational c;
  Integer r = squarefree_part(scale2, &c);
  return {basis * c, Rational(r)};
}

}  // namespace

FramePtr make_orthonormal_frame(std::size_t n, Rational metric_scale, std::string id) {
  auto f = std::make_shared<Frame>();
  f->id = id.empty() ? "R" + std::to_string(n) : std::move(id);
  f->metric = RatMatrix::identity(n) * metric_scale;
  f->orthonormal = metric_scale == 1;
  return f;
}

Lattice::Lattice(std::string name, RatMatrix gram, RatMatrix frame_basis, Rational scale2, FramePtr frame,
                 LatticeFacts facts)
    : name_(std::move(name)),
      gram_(std::move(gram)),
      frame_basis_(std::move(frame_basis)),
      scale2_(std::move(scale2)),
      frame_(std::move(frame)),
      facts_(std::move(facts)) {
  if (gram_.rows() == 0 || !gram_.is_symmetric())
    throw std::invalid_argument("lattice " + name_ + ": Gram matrix must be square and symmetric");
  if (!is_positive_definite(gram_))
    throw std::invalid_argument("lattice " + name_ + ": Gram matrix is not positive definite");
  if (!frame_ || frame_basis_.rows() != gram_.rows() || frame_basis_.cols() != frame_->metric.rows())
    throw std::invalid_argument("lattice " + name_ + ": frame basis has the wrong shape");
  RatMatrix check = frame_basis_ * frame_->metric * frame_basis_.transpose() * scale2_;
  if (!(check == gram_)) throw std::invalid_argument("lattice " + name_ + ": basis and Gram matrix disagree");
}

LatticePtr Lattice::from_gram(std::string name, RatMatrix gram, LatticeFacts facts) {
  auto frame = std::make_shared<Frame>();
  frame->id = name;
  frame->metric = gram;
  const std::size_t n = gram.rows();
  return std::make_shared<Lattice>(std::move(name), std::move(gram), RatMatrix::identity(n), Rational(1),
                                   std::move(frame), std::move(facts));
}

LatticePtr Lattice::from_basis(std::string name, RatMatrix basis, Rational metric_scale, LatticeFacts facts) {
  auto frame = make_orthonormal_frame(basis.cols(), metric_scale, name);
  RatMatrix gram = basis * frame->metric * basis.transpose();
  return std::make_shared<Lattice>(std::move(name), std::move(gram), std::move(basis), Rational(1),
                                   std::move(frame), std::move(facts));
}

bool Lattice::is_even() const {
  if (!gram_.is_integral()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (gram_(i, i).get_num() % 2 != 0) return false;
  return true;
}

Rational Lattice::norm(const IntVec& coeffs) const {
  RatVec c(coeffs.begin(), coeffs.end());
  return bilinear(c, gram_, c);
}

RatVec Lattice::to_frame(const IntVec& coeffs) const {
  RatVec v(frame_basis_.cols());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Rational c(static_cast<long>(coeffs[i]));
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * frame_basis_(i, j);
  }
  return v;
}

LatticePtr dual_rescaled(const LatticePtr& lattice, int ell) {
  if (ell < 1) throw std::invalid_argument("dual_rescaled: ell must be positive");
  auto ginv = inverse(lattice->gram());
  if (!ginv) throw std::invalid_argument("dual_rescaled: degenerate lattice");
  RatMatrix gram = *ginv * Rational(ell);
  auto sb = normalize_scale(*ginv * lattice->frame_basis(), lattice->scale2() * ell);
  LatticeFacts facts;
  facts.ell = lattice->facts().ell;
  facts.even = lattice->facts().even;
  return std::make_shared<Lattice>(lattice->name() + "'", std::move(gram), std::move(sb.basis),
                                   std::move(sb.scale2), lattice->frame(), facts);
}

LatticePtr direct_sum(const std::string& name, const std::vector<LatticePtr>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: no summands");
  std::size_t n = 0, m = 0;
  for (const auto& p : parts) {
    if (p->scale2() != parts.front()->scale2())
      throw std::invalid_argument("direct_sum: summands must share the same scale");
    n += p->dim();
    m += p->frame()->metric.rows();
  }
  RatMatrix gram(n, n), basis(n, m), metric(m, m);
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    const std::size_t d = p->dim(), f = p->frame()->metric.rows();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) gram(r + i, r + j) = p->gram()(i, j);
      for (std::size_t j = 0; j < f; ++j) basis(r + i, c + j) = p->frame_basis()(i, j);
    }
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j) metric(c + i, c + j) = p->frame()->metric(i, j);
    r += d;
    c += f;
  }
  auto frame = std::make_shared<Frame>();
  frame->id = name;
  frame->metric = metric;
  frame->orthonormal = metric == RatMatrix::identity(m);
  return std::make_shared<Lattice>(name, gram, basis, parts.front()->scale2(), frame);
}

LatticePtr rescaled(const LatticePtr& lattice, const Rational& factor, const std::string& name) {
  auto sb = normalize_scale(lattice->frame_basis(), lattice->scale2() * factor);
  return std::make_shared<Lattice>(name, lattice->gram() * factor, std::move(sb.basis), std::move(sb.scale2),
                                   lattice->frame());
}

// ---------------------------------------------------------------------------

I64Matrix integer_gram(const RatMatrix& gram, Integer* scale) {
  Integer d = 1;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), gram(i, j).get_den().get_mpz_t());
  I64Matrix g(gram.rows(), std::vector<std::int64_t>(gram.cols()));
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      Rational v = gram(i, j) * d;
      if (!v.get_num().fits_slong_p()) throw std::overflow_error("integer_gram: entry too large");
      g[i][j] = v.get_num().get_si();
    }
  if (scale) *scale = d;
  return g;
}

namespace {

// Gram-Schmidt data of an integer Gram matrix: |x|^2 = sum_i b[i] (x_i + sum_{j>i} mu[j][i] x_j)^2.
struct Gso {
  std::vector<long double> b;
  std::vector<std::vector<long double>> mu;
};

Gso gram_schmidt(const I64Matrix& g) {
  const std::size_t n = g.size();
  Gso s;
  s.b.assign(n, 0);
  s.mu.assign(n, std::vector<long double>(n, 0));
  std::vector<std::vector<long double>> r(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      long double v = static_cast<long double>(g[i][j]);
      for (std::size_t k = 0; k < j; ++k) v -= s.mu[j][k] * r[i][k];
      r[i][j] = v;
      if (j < i) s.mu[i][j] = v / s.b[j];
    }
    s.b[i] = r[i][i];
    if (!(s.b[i] > 0)) throw std::runtime_error("gram_schmidt: Gram matrix is not positive definite");
  }
  return s;
}

// LLL reduction acting on the Gram matrix; rows of `u` express the reduced
// basis in the input basis.
struct Reduced {
  I64Matrix gram;
  I64Matrix u;
};

Reduced lll(I64Matrix g) {
  const std::size_t n = g.size();
  I64Matrix u(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n < 2) return {g, u};
  const long double delta = 0.99L;
  Gso s = gram_schmidt(g);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1000000) throw std::runtime_error("lll: no convergence");
    for (std::size_t jj = k; jj-- > 0;) {
      long double q = std::round(s.mu[k][jj]);
      if (q == 0) continue;
      auto qi = static_cast<std::int64_t>(q);
      // b_k -= q b_j
      std::int64_t gkk = g[k][k] - 2 * qi * g[k][jj] + qi * qi * g[jj][jj];
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        g[k][i] -= qi * g[jj][i];
        g[i][k] = g[k][i];
      }
      g[k][k] = gkk;
      for (std::size_t i = 0; i < n; ++i) u[k][i] -= qi * u[jj][i];
      for (std::size_t l = 0; l < jj; ++l) s.mu[k][l] -= q * s.mu[jj][l];
      s.mu[k][jj] -= q;
    }
    if (s.b[k] < (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1]) {
      std::swap(g[k], g[k - 1]);
      for (auto& row : g) std::swap(row[k], row[k - 1]);
      std::swap(u[k], u[k - 1]);
      s = gram_schmidt(g);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  return {g, u};
}

std::int64_t exact_norm(const I64Matrix& g, const std::int64_t* x) {
  __int128 s = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    __int128 row = 0;
    for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(g[i][j]) * x[j];
    s += row * x[i];
  }
  return static_cast<std::int64_t>(s);
}

class HalfBallSearch {
 public:
  HalfBallSearch(const Reduced& red, std::int64_t bound, bool input_coords)
      : red_(red), gso_(gram_schmidt(red.gram)), bound_(bound), input_coords_(input_coords) {
    n_ = red.gram.size();
    radius_ = static_cast<long double>(bound) * (1 + 1e-12L) + 1e-9L;
  }

  // Top-level values of the last coordinate, each an independent subtree.
  std::vector<std::int64_t> top_values() const {
    const std::size_t i = n_ - 1;
    long double r = std::sqrt(radius_ / gso_.b[i]);
    std::vector<std::int64_t> v;
    for (std::int64_t x = 0; x <= static_cast<std::int64_t>(std::floor(r)); ++x) v.push_back(x);
    return v;
  }

  void run_subtree(std::int64_t top, unsigned worker, const BallVisitor& visit) const {
    std::vector<std::int64_t> x(n_, 0), out(n_, 0);
    std::vector<long double> partial(n_ + 1, 0);
    const std::size_t i = n_ - 1;
    x[i] = top;
    long double t = static_cast<long double>(top);
    partial[i] = gso_.b[i] * t * t;
    if (partial[i] > radius_) return;
    if (n_ == 1) {
      if (top != 0) leaf(x, partial[0], worker, visit, out);
      return;
    }
    descend(i - 1, top == 0, x, partial, worker, visit, out);
  }

 private:
  void leaf(const std::vector<std::int64_t>& x, long double approx, unsigned worker, const BallVisitor& visit,
            std::vector<std::int64_t>& out) const {
    std::int64_t norm = std::llround(approx);
    if (std::fabs(approx - static_cast<long double>(norm)) > 1e-4L) norm = exact_norm(red_.gram, x.data());
    if (norm > bound_) return;
    if (!input_coords_) {
      visit(worker, x.data(), norm);
      return;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += x[i] * red_.u[i][j];
      out[j] = s;
    }
    visit(worker, out.data(), norm);
  }

  void descend(std::size_t i, bool zero_above, std::vector<std::int64_t>& x, std::vector<long double>& partial,
               unsigned worker, const BallVisitor& visit, std::vector<std::int64_t>& out) const {
    long double c = 0;
    for (std::size_t j = i + 1; j < n_; ++j) c -= gso_.mu[j][i] * static_cast<long double>(x[j]);
    long double rem = radius_ - partial[i + 1];
    if (rem < 0) return;
    long double r = std::sqrt(rem / gso_.b[i]);
    auto lo = static_cast<std::int64_t>(std::ceil(c - r - 1e-9L));
    auto hi = static_cast<std::int64_t>(std::floor(c + r + 1e-9L));
    if (zero_above) lo = std::max<std::int64_t>(lo, 0);
    for (std::int64_t v = lo; v <= hi; ++v) {
      long double d = static_cast<long double>(v) - c;
      long double p = partial[i + 1] + gso_.b[i] * d * d;
      if (p > radius_) continue;
      x[i] = v;
      partial[i] = p;
      if (i == 0) {
        if (zero_above && v == 0) continue;
        leaf(x, p, worker, visit, out);
      } else {
        descend(i - 1, zero_above && v == 0, x, partial, worker, visit, out);
      }
    }
    x[i] = 0;
  }

  const Reduced& red_;
  Gso gso_;
  std::int64_t bound_;
  bool input_coords_;
  std::size_t n_ = 0;
  long double radius_ = 0;
};

unsigned resolve_threads(unsigned requested) {
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

struct ScaledGram {
  I64Matrix gram;
  Integer scale;
};

ScaledGram scaled_gram(const Lattice& l) {
  ScaledGram s;
  s.gram = integer_gram(l.gram(), &s.scale);
  return s;
}

// Norm m of the lattice as a bound in the integer Gram; nullopt when m*D is not integral.
std::optional<std::int64_t> scaled_norm(const Rational& m, const Integer& scale) {
  Rational v = m * scale;
  if (v.get_den() != 1) return std::nullopt;
  if (!v.get_num().fits_slong_p()) throw std::overflow_error("norm too large for enumeration");
  return v.get_num().get_si();
}

}  // namespace

LllResult lll_reduce(const I64Matrix& gram) {
  Reduced r = lll(gram);
  return {r.gram, r.u};
}

void enumerate_half_ball(const I64Matrix& gram, std::int64_t bound, const BallVisitor& visit, unsigned threads,
                         bool input_coords) {
  if (gram.empty() || bound <= 0) return;
  Reduced red = lll(gram);
  HalfBallSearch search(red, bound, input_coords);
  auto tops = search.top_values();
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(tops.size()));
  if (threads <= 1) {
    for (auto t : tops) search.run_subtree(t, 0, visit);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < tops.size(); i += threads) search.run_subtree(tops[i], w, visit);
    });
  for (auto& t : pool) t.join();
}

RatVec ShellSet::frame_vector(std::size_t i) const {
  const auto& v = vectors.at(i);
  return sources.at(v.member)->to_frame(v.coeffs);
}

ShellSet enumerate_shell(const LatticePtr& lattice, const Rational& norm, const EnumerationOptions& opt) {
  if (norm <= 0) throw std::invalid_argument("enumerate_shell: norm must be positive");
  ShellSet shell;
  shell.sources = {lattice};
  shell.norm = norm;
  shell.member_counts = {0};
  auto sg = scaled_gram(*lattice);
  auto target = scaled_norm(norm, sg.scale);
  if (!target) return shell;
  const unsigned threads = resolve_threads(opt.threads);
  std::vector<std::vector<IntVec>> found(threads);
  std::vector<std::size_t> counts(threads, 0);
  const std::size_t n = lattice->dim();
  const std::size_t half_cap = opt.cap / 2 + 1;
  std::mutex cap_mutex;
  bool over_cap = false;
  enumerate_half_ball(
      sg.gram, *target,
      [&](unsigned w, const std::int64_t* x, std::int64_t nrm) {
        if (nrm != *target) return;
        if (++counts[w] > half_cap) {
          std::lock_guard<std::mutex> lock(cap_mutex);
          over_cap = true;
          return;
        }
        found[w].emplace_back(x, x + n);
      },
      threads);
  if (over_cap)
    throw CapExceeded("enumerate_shell: shell " + to_string(norm) + " of " + lattice->name() +
                      " exceeds the cap of " + std::to_string(opt.cap) + " vectors");
  std::vector<IntVec> all;
  for (auto& f : found)
    for (auto& v : f) {
      IntVec neg(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
      all.push_back(std::move(v));
      all.push_back(std::move(neg));
    }
  if (all.size() > opt.cap)
    throw CapExceeded("enumerate_shell: shell exceeds the cap of " + std::to_string(opt.cap) + " vectors");
  std::sort(all.begin(), all.end());
  shell.vectors.reserve(all.size());
  for (auto& v : all) shell.vectors.push_back({0, std::move(v)});
  shell.member_counts[0] = shell.vectors.size();
  return shell;
}

Integer count_shell(const LatticePtr& lattice, const Rational& norm, const EnumerationOptions& opt) {
  if (norm <= 0) throw std::invalid_argument("count_shell: norm must be positive");
  auto sg = scaled_gram(*lattice);
  auto target = scaled_norm(norm, sg.scale);
  if (!target) return 0;
  const unsigned threads = resolve_threads(opt.threads);
  std::vector<std::uint64_t> counts(threads, 0);
  enumerate_half_ball(
      sg.gram, *target,
      [&](unsigned w, const std::int64_t*, std::int64_t nrm) {
        if (nrm == *target) ++counts[w];
      },
      threads, false);
  Integer total = 0;
  for (auto c : counts) total += Integer(static_cast<unsigned long>(c));
  return 2 * total;
}

QSeries theta_by_enumeration(const LatticePtr& lattice, int max_norm, const EnumerationOptions& opt) {
  if (max_norm < 0) throw TruncationError("theta_by_enumeration: negative truncation");
  if (!lattice->is_integral())
    throw std::invalid_argument("theta_by_enumeration: " + lattice->name() + " is not integral");
  QSeries theta = QSeries::one(max_norm);
  if (max_norm == 0) return theta;
  auto g = integer_gram(lattice->gram());
  const unsigned threads = resolve_threads(opt.threads);
  std::vector<std::vector<std::uint64_t>> hist(threads, std::vector<std::uint64_t>(max_norm + 1, 0));
  enumerate_half_ball(
      g, max_norm, [&](unsigned w, const std::int64_t*, std::int64_t nrm) { ++hist[w][nrm]; }, threads, false);
  for (int m = 1; m <= max_norm; ++m) {
    Integer c = 0;
    for (const auto& h : hist) c += Integer(static_cast<unsigned long>(h[m]));
    theta.set_coeff(m, Rational(2 * c));
  }
  return theta;
}

ShellSet union_shell(const std::vector<LatticePtr>& lattices, const Rational& norm,
                     const EnumerationOptions& opt) {
  if (lattices.empty()) throw std::invalid_argument("union_shell: no lattices");
  for (const auto& l : lattices)
    if (l->frame() != lattices.front()->frame())
      throw std::invalid_argument("union_shell: " + l->name() + " is not expressed in the shared frame");
  ShellSet out;
  out.sources = lattices;
  out.norm = norm;
  out.member_counts.assign(lattices.size(), 0);
  std::map<std::vector<Integer>, std::size_t> seen;
  for (std::size_t i = 0; i < lattices.size(); ++i) {
    bool duplicate_member = false;
    for (std::size_t j = 0; j < i; ++j)
      if (lattices[j] == lattices[i]) duplicate_member = true;
    if (duplicate_member) continue;
    ShellSet s = enumerate_shell(lattices[i], norm, opt);
    out.member_counts[i] = s.size();
    for (auto& v : s.vectors) {
      // equal norm, so equal primitive direction means equal vector
      auto key = primitive_direction(lattices[i]->to_frame(v.coeffs));
      auto [it, inserted] = seen.emplace(std::move(key), out.vectors.size());
      if (!inserted) {
        if (out.vectors[it->second].member != i) out.members_intersected = true;
        continue;
      }
      out.vectors.push_back({i, std::move(v.coeffs)});
    }
  }
  return out;
}

std::pair<Rational, Integer> minimum(const LatticePtr& lattice, const EnumerationOptions& opt) {
  auto sg = scaled_gram(*lattice);
  std::int64_t bound = sg.gram[0][0];
  for (std::size_t i = 0; i < sg.gram.size(); ++i) bound = std::min(bound, sg.gram[i][i]);
  // the shortest reduced basis vector bounds the minimum
  Reduced red = lll(sg.gram);
  for (std::size_t i = 0; i < red.gram.size(); ++i) bound = std::min(bound, red.gram[i][i]);
  const unsigned threads = resolve_threads(opt.threads);
  std::vector<std::map<std::int64_t, std::uint64_t>> hist(threads);
  enumerate_half_ball(
      sg.gram, bound, [&](unsigned w, const std::int64_t*, std::int64_t nrm) { ++hist[w][nrm]; }, threads, false);
  std::map<std::int64_t, std::uint64_t> merged;
  for (const auto& h : hist)
    for (const auto& [k, v] : h) merged[k] += v;
  if (merged.empty()) throw std::runtime_error("minimum: enumeration found no vectors");
  auto [m, c] = *merged.begin();
  Rational min_norm(Integer(static_cast<long>(m)), sg.scale);
  min_norm.canonicalize();
  return {min_norm, 2 * Integer(static_cast<unsigned long>(c))};
}

}  // namespace latcub
