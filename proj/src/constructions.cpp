#include "latcub/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace latcub {

namespace {

RatVec int_vec(std::initializer_list<long> v) {
  RatVec r;
  for (long x : v) r.emplace_back(x);
  return r;
}

std::vector<RatVec> hnf_rational(const std::vector<RatVec>& generators) {
  if (generators.empty()) throw std::invalid_argument("no generators");
  Integer den = 1;
  for (const auto& g : generators) {
    Integer d = common_denominator(g);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<std::vector<Integer>> ints;
  for (const auto& g : generators) {
    std::vector<Integer> row;
    for (const auto& x : g) {
      Rational v = x * den;
      row.push_back(v.get_num());
    }
    ints.push_back(std::move(row));
  }
  auto h = hermite_basis(std::move(ints));
  std::vector<RatVec> out;
  for (const auto& row : h) {
    RatVec r;
    for (const auto& x : row) {
      Rational v(x, den);
      v.canonicalize();
      r.push_back(v);
    }
    out.push_back(std::move(r));
  }
  return out;
}

long mod(long a, long p) { return ((a % p) + p) % p; }

long inverse_mod(long a, long p) {
  a = mod(a, p);
  for (long x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::invalid_argument("inverse_mod: not invertible");
}

// Coefficient vectors spanning {c in Z^n : f.c = 0 mod p}.
std::vector<RatVec> kernel_mod_p(const std::vector<long>& f, long p) {
  const std::size_t n = f.size();
  std::size_t k = n;
  for (std::size_t i = 0; i < n; ++i)
    if (mod(f[i], p) != 0) {
      k = i;
      break;
    }
  std::vector<RatVec> gens;
  if (k == n) {
    for (std::size_t i = 0; i < n; ++i) {
      RatVec e(n);
      e[i] = 1;
      gens.push_back(e);
    }
    return gens;
  }
  const long inv = inverse_mod(f[k], p);
  for (std::size_t i = 0; i < n; ++i) {
    RatVec e(n);
    if (i == k) {
      e[k] = p;
    } else {
      e[i] = 1;
      e[k] = -mod(f[i] * inv, p);
    }
    gens.push_back(e);
  }
  return gens;
}

std::vector<long> gram_times(const RatMatrix& g, const IntVec& v) {
  std::vector<long> out(g.rows(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) s += g(i, j) * Rational(static_cast<long>(v[j]));
    if (s.get_den() != 1) throw std::invalid_argument("lattice is not integral");
    out[i] = s.get_num().get_si();
  }
  return out;
}

}  // namespace

LatticePtr lattice_from_generators(const std::string& name, const std::vector<RatVec>& generators,
                                   const Rational& metric_scale, LatticeFacts facts) {
  auto basis = hnf_rational(generators);
  return Lattice::from_basis(name, RatMatrix(basis), metric_scale, std::move(facts));
}

LatticePtr make_d4() {
  std::vector<RatVec> gens;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      RatVec a(4), b(4);
      a[i] = 1;
      a[j] = 1;
      b[i] = 1;
      b[j] = -1;
      gens.push_back(a);
      gens.push_back(b);
    }
  LatticeFacts f;
  f.even = true;
  f.ell = 2;
  f.det = Rational(4);
  f.min_norm = Rational(2);
  f.kissing = 24;
  return lattice_from_generators("D4", gens, 1, f);
}

LatticePtr make_e8() {
  std::vector<RatVec> gens;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      RatVec a(8), b(8);
      a[i] = 1;
      a[j] = 1;
      b[i] = 1;
      b[j] = -1;
      gens.push_back(a);
      gens.push_back(b);
    }
  gens.push_back(RatVec(8, Rational(1, 2)));
  LatticeFacts f;
  f.even = true;
  f.ell = 1;
  f.det = Rational(1);
  f.min_norm = Rational(2);
  f.kissing = 240;
  return lattice_from_generators("E8", gens, 1, f);
}

LatticePtr make_a2() {
  LatticeFacts f;
  f.even = true;
  f.ell = 3;
  f.det = Rational(3);
  f.min_norm = Rational(2);
  f.kissing = 6;
  return Lattice::from_gram("A2", RatMatrix({int_vec({2, 1}), int_vec({1, 2})}), f);
}

LatticePtr make_a4() {
  RatMatrix g(4, 4);
  for (int i = 0; i < 4; ++i) {
    g(i, i) = 2;
    if (i + 1 < 4) {
      g(i, i + 1) = -1;
      g(i + 1, i) = -1;
    }
  }
  LatticeFacts f;
  f.even = true;
  f.det = Rational(5);
  f.min_norm = Rational(2);
  f.kissing = 20;
  return Lattice::from_gram("A4", g, f);
}

LatticePtr binary_form(const std::string& name, long a, long b, long c) {
  LatticeFacts f;
  f.even = a % 2 == 0 && c % 2 == 0;
  f.det = Rational(a * c - b * b);
  return Lattice::from_gram(name, RatMatrix({int_vec({a, b}), int_vec({b, c})}), f);
}

LatticePtr make_l4_level11() {
  // found by exhaustive search over reduced even forms; the test suite repeats the search
  RatMatrix g({int_vec({4, 2, 1, -1}), int_vec({2, 4, 0, -1}), int_vec({1, 0, 4, -2}), int_vec({-1, -1, -2, 4})});
  LatticeFacts f;
  f.even = true;
  f.det = Rational(121);
  f.min_norm = Rational(4);
  return Lattice::from_gram("L4_11", g, f);
}

LatticePtr make_l0_level5() {
  RatMatrix g({int_vec({2, 1, 1, -1}), int_vec({1, 2, 0, -1}), int_vec({1, 0, 4, -2}), int_vec({-1, -1, -2, 4})});
  LatticeFacts f;
  f.even = true;
  f.ell = 5;
  f.det = Rational(25);
  f.min_norm = Rational(2);
  f.kissing = 6;
  return Lattice::from_gram("L0_5", g, f);
}

std::vector<Codeword> reed_muller_1(int m) {
  const int len = 1 << m;
  std::vector<Codeword> rows;
  rows.emplace_back(len, 1);
  for (int k = 0; k < m; ++k) {
    Codeword c(len);
    for (int i = 0; i < len; ++i) c[i] = (i >> k) & 1;
    rows.push_back(c);
  }
  return rows;
}

std::vector<Codeword> golay_cyclic_generators() {
  // g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
  const int g[] = {1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1};
  std::vector<Codeword> rows;
  for (int s = 0; s < 12; ++s) {
    Codeword c(24, 0);
    for (int i = 0; i < 12; ++i) c[(i + s) % 23] = g[i];
    int parity = 0;
    for (int i = 0; i < 23; ++i) parity ^= c[i];
    c[23] = parity;
    rows.push_back(c);
  }
  return rows;
}

std::vector<Codeword> golay_icosahedron_generators() {
  std::vector<std::vector<int>> adj(12, std::vector<int>(12, 0));
  auto link = [&](int a, int b) { adj[a][b] = adj[b][a] = 1; };
  for (int i = 1; i <= 5; ++i) {
    link(0, i);
    link(11, 5 + i);
    link(i, i % 5 + 1);
    link(5 + i, 5 + i % 5 + 1);
    link(i, 5 + i);
    link(i, 5 + i % 5 + 1);
  }
  std::vector<Codeword> rows;
  for (int r = 0; r < 12; ++r) {
    Codeword c(24, 0);
    c[r] = 1;
    for (int j = 0; j < 12; ++j) c[12 + j] = 1 - adj[r][j];
    rows.push_back(c);
  }
  return rows;
}

std::vector<Codeword> code_words(const std::vector<Codeword>& generators) {
  const std::size_t k = generators.size();
  const std::size_t len = generators.empty() ? 0 : generators.front().size();
  std::set<Codeword> words;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Codeword c(len, 0);
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1)
        for (std::size_t j = 0; j < len; ++j) c[j] ^= generators[i][j];
    words.insert(c);
  }
  return {words.begin(), words.end()};
}

LatticePtr make_bw16_reed_muller() {
  std::vector<RatVec> gens;
  for (const auto& c : reed_muller_1(4)) {
    RatVec v(16);
    for (int i = 0; i < 16; ++i) v[i] = c[i];
    gens.push_back(v);
  }
  for (int i = 0; i + 1 < 16; ++i) {
    RatVec a(16), b(16);
    a[i] = 2;
    a[i + 1] = 2;
    b[i] = 2;
    b[i + 1] = -2;
    gens.push_back(a);
    gens.push_back(b);
  }
  LatticeFacts f;
  f.even = true;
  f.ell = 2;
  f.det = Rational(256);
  f.min_norm = Rational(4);
  f.kissing = 4320;
  return lattice_from_generators("BW16", gens, Rational(1, 2), f);
}

LatticePtr make_bw16_gaussian() {
  // Gaussian integers as pairs (re, im); H = [[1,1],[0,1+i]]
  using G = std::pair<long, long>;
  auto mul = [](G a, G b) { return G{a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first}; };
  const G h[2][2] = {{{1, 0}, {1, 0}}, {{0, 0}, {1, 1}}};
  std::vector<RatVec> gens;
  for (int r = 0; r < 8; ++r) {
    std::vector<G> row(8);
    for (int c = 0; c < 8; ++c) {
      G e{1, 0};
      for (int k = 0; k < 3; ++k) e = mul(e, h[(r >> k) & 1][(c >> k) & 1]);
      row[c] = e;
    }
    for (G unit : {G{1, 0}, G{0, 1}}) {
      RatVec v(16);
      for (int c = 0; c < 8; ++c) {
        G e = mul(row[c], unit);
        v[2 * c] = e.first;
        v[2 * c + 1] = e.second;
      }
      gens.push_back(v);
    }
  }
  LatticeFacts f;
  f.even = true;
  f.ell = 2;
  f.det = Rational(256);
  f.min_norm = Rational(4);
  f.kissing = 4320;
  return lattice_from_generators("BW16-gaussian", gens, Rational(1, 2), f);
}

LatticePtr make_leech(const std::vector<Codeword>& golay_generators, const std::string& name) {
  std::vector<RatVec> gens;
  for (const auto& c : golay_generators) {
    RatVec v(24);
    for (int i = 0; i < 24; ++i) v[i] = 2 * c[i];
    gens.push_back(v);
  }
  for (int i = 1; i < 24; ++i) {
    RatVec a(24), b(24);
    a[0] = 4;
    a[i] = 4;
    b[0] = 4;
    b[i] = -4;
    gens.push_back(a);
    gens.push_back(b);
  }
  RatVec odd(24, Rational(1));
  odd[0] = -3;
  gens.push_back(odd);
  LatticeFacts f;
  f.even = true;
  f.ell = 1;
  f.det = Rational(1);
  f.min_norm = Rational(4);
  f.kissing = 196560;
  return lattice_from_generators(name, gens, Rational(1, 8), f);
}

LatticePtr make_k12() {
  // x = (x_1..x_6) in Z[w]^6, x_k = a_k + b_k w, frame coordinates (a_1, b_1, ..., a_6, b_6)
  // conditions: a_k + b_k all congruent mod 3, sum a_k = sum b_k = 0 mod 3
  std::vector<std::vector<long>> cons;
  for (int k = 1; k < 6; ++k) {
    std::vector<long> c(12, 0);
    c[0] = 1;
    c[1] = 1;
    c[2 * k] = -1;
    c[2 * k + 1] = -1;
    cons.push_back(c);
  }
  for (int part = 0; part < 2; ++part) {
    std::vector<long> c(12, 0);
    for (int k = 0; k < 6; ++k) c[2 * k + part] = 1;
    cons.push_back(c);
  }
  // intersect the kernels one constraint at a time
  std::vector<RatVec> gens;
  for (int i = 0; i < 12; ++i) {
    RatVec e(12);
    e[i] = 1;
    gens.push_back(e);
  }
  for (const auto& c : cons) {
    auto basis = hnf_rational(gens);
    std::vector<long> f;
    for (const auto& b : basis) {
      Rational s = 0;
      for (int j = 0; j < 12; ++j) s += b[j] * c[j];
      f.push_back(mod(s.get_num().get_si(), 3));
    }
    std::vector<RatVec> next;
    for (const auto& k : kernel_mod_p(f, 3)) {
      RatVec v(12);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < 12; ++j) v[j] += k[i] * basis[i][j];
      next.push_back(v);
    }
    gens = next;
  }
  auto basis = RatMatrix(hnf_rational(gens));
  auto frame = std::make_shared<Frame>();
  frame->id = "K12";
  frame->metric = RatMatrix(12, 12);
  for (int k = 0; k < 6; ++k) {
    frame->metric(2 * k, 2 * k) = Rational(2, 3);
    frame->metric(2 * k + 1, 2 * k + 1) = Rational(2, 3);
    frame->metric(2 * k, 2 * k + 1) = Rational(-1, 3);
    frame->metric(2 * k + 1, 2 * k) = Rational(-1, 3);
  }
  LatticeFacts f;
  f.even = true;
  f.ell = 3;
  f.det = Rational(729);
  f.min_norm = Rational(4);
  f.kissing = 756;
  RatMatrix gram = basis * frame->metric * basis.transpose();
  return std::make_shared<Lattice>("K12", gram, basis, Rational(1), frame, f);
}

LatticePtr make_o23(const LatticePtr& leech) {
  if (leech->dim() != 24 || !leech->frame()->metric.is_symmetric())
    throw std::invalid_argument("make_o23: expects the Leech lattice");
  // v = (4, 4, 0, ..., 0) in the dot/8 frame has norm 4
  const std::size_t n = 24;
  RatVec v(n);
  v[0] = 4;
  v[1] = 4;
  const RatMatrix& b = leech->frame_basis();
  const RatMatrix& metric = leech->frame()->metric;
  std::vector<long> f;
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = bilinear(b.row(i), metric, v) * leech->scale2();
    if (s.get_den() != 1) throw std::invalid_argument("make_o23: v is not in the dual");
    f.push_back(s.get_num().get_si());
  }
  const Rational vv = bilinear(v, metric, v);
  std::vector<RatVec> gens;
  for (const auto& k : kernel_mod_p(f, 2)) {
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x[j] += k[i] * b(i, j);
    Rational t = bilinear(x, metric, v) / vv;
    for (std::size_t j = 0; j < n; ++j) x[j] -= t * v[j];
    gens.push_back(x);
  }
  auto basis = RatMatrix(hnf_rational(gens));
  RatMatrix gram = basis * metric * basis.transpose() * leech->scale2();
  LatticeFacts facts;
  facts.even = false;
  facts.ell = 1;
  facts.det = Rational(1);
  facts.min_norm = Rational(3);
  facts.kissing = 4600;
  return std::make_shared<Lattice>("O23", gram, basis, leech->scale2(), leech->frame(), facts);
}

LatticePtr neighbor(const LatticePtr& lattice, const IntVec& v, int p, const std::string& name) {
  const std::size_t n = lattice->dim();
  auto gv = gram_times(lattice->gram(), v);
  std::vector<RatVec> gens = kernel_mod_p(gv, p);
  RatVec w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = Rational(static_cast<long>(v[i]), p);
  gens.push_back(w);
  auto coeffs = RatMatrix(hnf_rational(gens));
  RatMatrix gram = coeffs * lattice->gram() * coeffs.transpose();
  if (!gram.is_integral()) throw std::invalid_argument("neighbor: result is not integral");
  return reduced_copy(Lattice::from_gram(name, gram), name);
}

LatticePtr random_neighbor(const LatticePtr& lattice, int p, std::mt19937_64& rng, const std::string& name) {
  const std::size_t n = lattice->dim();
  std::uniform_int_distribution<int> digit(0, p - 1);
  IntVec c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = digit(rng);
  if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; })) return nullptr;
  auto gc = gram_times(lattice->gram(), c);
  long norm = 0;
  for (std::size_t i = 0; i < n; ++i) norm += gc[i] * c[i];
  std::size_t k = n;
  for (std::size_t i = 0; i < n; ++i)
    if (mod(gc[i], p) != 0) {
      k = i;
      break;
    }
  if (k == n) return nullptr;
  if (p == 2) {
    if (mod(norm, 4) != 0) return nullptr;
    // (c + 2e_k)^2 = c^2 + 4 (Gc)_k + 4 G_kk, and G_kk is even
    if (mod(norm, 8) != 0) c[k] += 2;
  } else {
    if (mod(norm, p) != 0) return nullptr;
    // (c + p t e_k)^2 = c^2 + 2 p t (Gc)_k mod p^2
    long t = mod(-(norm / p) * inverse_mod(2 * gc[k], p), p);
    c[k] += p * t;
  }
  return neighbor(lattice, c, p, name);
}

LatticePtr reduced_copy(const LatticePtr& lattice, const std::string& name) {
  Integer scale;
  auto g = integer_gram(lattice->gram(), &scale);
  auto red = lll_reduce(g);
  const std::size_t n = g.size();
  RatMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gram(i, j) = Rational(Integer(static_cast<long>(red.gram[i][j])), scale);
      gram(i, j).canonicalize();
    }
  return Lattice::from_gram(name, gram, lattice->facts());
}

std::map<long, long> minimal_vector_profile(const LatticePtr& lattice) {
  const auto g = integer_gram(lattice->gram());
  const std::size_t n = g.size();
  const std::int64_t min_norm = [&] {
    std::int64_t m = g[0][0];
    enumerate_half_ball(g, m, [&](unsigned, const std::int64_t*, std::int64_t nrm) { m = std::min(m, nrm); });
    return m;
  }();
  std::vector<std::vector<std::int64_t>> v;
  enumerate_half_ball(g, min_norm, [&](unsigned, const std::int64_t* x, std::int64_t nrm) {
    if (nrm != min_norm) return;
    v.emplace_back(x, x + n);
    v.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) v.back()[i] = -x[i];
  });
  const std::size_t count = v.size(), words = (count + 63) / 64;
  std::vector<std::vector<std::int64_t>> gv(count, std::vector<std::int64_t>(n, 0));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t i = 0; i < n; ++i)
      if (v[a][i])
        for (std::size_t j = 0; j < n; ++j) gv[a][j] += v[a][i] * g[i][j];
  const std::int64_t target = min_norm / 2;
  std::vector<std::vector<std::uint64_t>> adj(count, std::vector<std::uint64_t>(words, 0));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += gv[a][j] * v[b][j];
      if (s == target && min_norm % 2 == 0) adj[a][b / 64] |= std::uint64_t(1) << (b % 64);
    }
  std::map<long, long> hist;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      if (!(adj[a][b / 64] >> (b % 64) & 1)) continue;
      long common = 0;
      for (std::size_t w = 0; w < words; ++w) common += __builtin_popcountll(adj[a][w] & adj[b][w]);
      ++hist[common];
    }
  return hist;
}

namespace {

long count_norm_two(const LatticePtr& l) {
  long c = 0;
  enumerate_half_ball(integer_gram(l->gram()), 2, [&](unsigned, const std::int64_t*, std::int64_t) { ++c; });
  return c;
}

}  // namespace

LatticePtr neighbor_search(const LatticePtr& start, int p, int candidates, std::uint64_t seed,
                           const std::string& name, int max_steps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0, 1);
  LatticePtr cur = reduced_copy(Lattice::from_gram(name, start->gram()), name);
  long score = count_norm_two(cur);
  for (int step = 0; step < max_steps && score > 0; ++step) {
    LatticePtr best;
    long best_score = 0;
    for (int c = 0; c < candidates; ++c) {
      auto nb = random_neighbor(cur, p, rng, name);
      if (!nb) continue;
      nb = reduced_copy(nb, name);
      long s = count_norm_two(nb);
      if (!best || s < best_score) {
        best = nb;
        best_score = s;
      }
    }
    if (!best) continue;
    if (best_score <= score || uniform(rng) < std::exp(-(best_score - score) / 3.0)) {
      cur = best;
      score = best_score;
    }
  }
  if (score > 0) throw std::runtime_error("neighbor_search: no lattice without norm 2 vectors found");
  return cur;
}

}  // namespace latcub
