#include "doctest.h"
#include "latcub/constructions.hpp"
#include "latcub/designs.hpp"
#include "latcub/gegenbauer.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace latcub;

namespace {

// Uniformly weighted unit vectors from a shell of a lattice in an orthonormal frame.
NodeSet shell_nodes(const LatticePtr& l, long m) {
  auto shell = enumerate_shell(l, m);
  NodeSet s;
  s.dim = l->dim();
  const double scale = std::sqrt(to_double(l->frame()->metric(0, 0)) / static_cast<double>(m));
  for (std::size_t i = 0; i < shell.size(); ++i) {
    auto v = shell.frame_vector(i);
    for (const auto& c : v) s.coords.push_back(to_double(c) * scale);
  }
  s.weights.assign(shell.size(), 1.0 / static_cast<double>(shell.size()));
  return s;
}

NodeSet rotate(const NodeSet& s, std::mt19937_64& rng) {
  // random orthogonal map as a product of Householder reflections
  std::normal_distribution<double> g;
  NodeSet r = s;
  for (int step = 0; step < 3; ++step) {
    std::vector<double> h(s.dim);
    double nn = 0;
    for (auto& x : h) {
      x = g(rng);
      nn += x * x;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      double* x = r.coords.data() + i * r.dim;
      double d = 0;
      for (std::size_t j = 0; j < r.dim; ++j) d += x[j] * h[j];
      for (std::size_t j = 0; j < r.dim; ++j) x[j] -= 2 * d / nn * h[j];
    }
  }
  return r;
}

// Orthogonal polynomials by Gram-Schmidt on monomials with exact moments,
// scaled so that <p, p> = p(1) and the leading coefficient is positive.
std::vector<std::vector<Rational>> gram_schmidt(int n, int max_degree) {
  auto inner = [n](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * sphere_moment(n, static_cast<int>(i + j));
    return s;
  };
  std::vector<std::vector<Rational>> out;
  for (int k = 0; k <= max_degree; ++k) {
    std::vector<Rational> p(k + 1, Rational(0));
    p[k] = 1;
    for (const auto& q : out) {
      Rational c = inner(p, q) / inner(q, q);
      for (std::size_t i = 0; i < q.size(); ++i) p[i] -= c * q[i];
    }
    Rational at1 = 0;
    for (const auto& c : p) at1 += c;
    Rational norm = inner(p, p);
    // scale by lambda with lambda^2 <p,p> = lambda p(1)
    Rational lambda = at1 / norm;
    for (auto& c : p) c *= lambda;
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("Gegenbauer polynomials match Gram-Schmidt on exact moments") {
  for (int n : {2, 3, 4, 8, 24}) {
    CAPTURE(n);
    Gegenbauer g(n);
    auto oracle = gram_schmidt(n, 12);
    for (int k = 0; k <= 12; ++k) {
      CAPTURE(k);
      std::vector<Rational> c = g.coefficients(k);
      c.resize(oracle[k].size(), Rational(0));
      CHECK(c == oracle[k]);
      CHECK(g.value(k, Rational(1)) == Rational(g.harmonic_dimension(k)));
    }
    CHECK(g.coefficients(1) == std::vector<Rational>{0, n});
  }
}

TEST_CASE("Gegenbauer values and harmonic dimensions") {
  Gegenbauer g4(4);
  for (int k = 0; k <= 20; ++k) CHECK(g4.harmonic_dimension(k) == (k + 1) * (k + 1));
  Gegenbauer g8(8);
  std::vector<double> v(17);
  for (double u : {-1.0, -0.3, 0.0, 0.25, 0.7, 1.0}) {
    g8.values(16, u, v.data());
    CHECK(v[0] == 1.0);
    for (int k = 1; k <= 16; ++k) {
      double exact = to_double(g8.value(k, Rational(u)));
      CHECK(v[k] == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  CHECK(sphere_moment(3, 2) == Rational(1, 3));
  CHECK(sphere_moment(5, 3) == 0);
  CHECK(sphere_moment(8, 4) == Rational(3, 80));
}

TEST_CASE("root systems as spherical designs") {
  auto e8 = shell_nodes(make_e8(), 2);
  REQUIRE(e8.size() == 240);
  auto r = strength_check(e8, 7);
  CHECK(r.pass);
  CHECK(r.sharp_degree == 8);
  auto r8 = strength_check(e8, 8);
  CHECK_FALSE(r8.pass);
  CHECK(r8.first_failing == 8);

  auto d4 = shell_nodes(make_d4(), 2);
  REQUIRE(d4.size() == 24);
  auto s = strength_check(d4, 5);
  CHECK(s.pass);
  CHECK(s.sharp_degree == 6);
  CHECK(strength_check(d4, 6).first_failing == 6);
}

TEST_CASE("antipodal pair is a 1-design and odd defects vanish") {
  NodeSet pair;
  pair.dim = 3;
  pair.coords = {0, 0, 1, 0, 0, -1};
  pair.weights = {0.5, 0.5};
  CHECK(strength_check(pair, 1).pass);
  CHECK(strength_check(pair, 2).first_failing == 2);
  auto d = pair_defects(shell_nodes(make_d4(), 6), 15);
  for (const auto& x : d) {
    if (x.k % 2) CHECK(std::fabs(x.defect) <= 1e-12 * x.scale);
    CHECK(x.defect >= -1e-9 * x.scale);
  }
}

TEST_CASE("defects are rotation invariant and thread independent") {
  std::mt19937_64 rng(7);
  auto s = shell_nodes(make_d4(), 10);
  auto r = rotate(s, rng);
  auto a = pair_defects(s, 12), b = pair_defects(r, 12);
  for (std::size_t k = 0; k < a.size(); ++k)
    CHECK(std::fabs(a[k].defect - b[k].defect) <= 1e-9 * a[k].scale);
  DefectOptions one, three;
  one.threads = 1;
  three.threads = 3;
  auto c = pair_defects(s, 12, one), d = pair_defects(s, 12, three);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k].defect == d[k].defect);
}

TEST_CASE("pair loop agrees with the inner product distribution") {
  auto s = shell_nodes(make_e8(), 4);
  std::map<long long, double> hist;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      double u = 0;
      for (std::size_t d = 0; d < s.dim; ++d) u += s.node(i)[d] * s.node(j)[d];
      hist[std::llround(u * 4)] += s.weights[i] * s.weights[j];  // norm 4 shell: u in Z/4
    }
  InnerProductDistribution dist;
  dist.dim = 8;
  for (const auto& [key, mass] : hist) {
    dist.u.push_back(key / 4.0);
    dist.mass.push_back(mass);
  }
  auto a = pair_defects(s, 10), b = distribution_defects(dist, 10);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CAPTURE(k);
    CHECK(std::fabs(a[k].defect - b[k].defect) <= 1e-9 * a[k].scale);
    CHECK(a[k].zero == b[k].zero);
  }
}

TEST_CASE("node set validation and pair cap") {
  NodeSet bad;
  bad.dim = 2;
  bad.coords = {1, 1};
  bad.weights = {1};
  CHECK_THROWS_AS(check_node_set(bad), std::invalid_argument);
  DefectOptions opt;
  opt.pair_cap = 100;
  CHECK_THROWS_AS(pair_defects(shell_nodes(make_d4(), 2), 3, opt), PairCapExceeded);
}
