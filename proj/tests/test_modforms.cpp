#include "doctest.h"
#include "latcub/catalog.hpp"
#include "latcub/constructions.hpp"
#include "latcub/linalg.hpp"
#include "latcub/modforms.hpp"

using namespace latcub;

namespace {

QSeries from_ints(std::initializer_list<long> c, int trunc) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QSeries(v, trunc);
}

// true if f is an exact linear combination of the basis (compared through f's truncation)
bool in_span(const SpaceBasis& s, const QSeries& f) {
  const int t = f.truncation();
  if (s.basis.empty()) return f.is_zero();
  RatMatrix a(static_cast<std::size_t>(t) + 1, s.basis.size());
  RatVec b(static_cast<std::size_t>(t) + 1);
  for (int m = 0; m <= t; ++m) {
    for (std::size_t j = 0; j < s.basis.size(); ++j) a(m, j) = s.basis[j].coeff(m);
    b[m] = f.coeff(m);
  }
  return solve_exact(a, b).status != SolveStatus::inconsistent;
}

bool proportional(const QSeries& f, const QSeries& g) {
  int v = g.valuation();
  if (v < 0 || f.is_zero()) return false;
  Rational r = f.coeff(v) / g.coeff(v);
  return f == g * r;
}

}  // namespace

TEST_CASE("generator weights") {
  struct Row {
    int ell, k0, k1, k2;
  };
  for (auto r : {Row{1, 4, 12, 18}, Row{2, 2, 8, 12}, Row{3, 1, 6, 9}, Row{5, 2, 4, 8}, Row{7, 1, 3, 6},
                 Row{11, 1, 2, 5}, Row{23, 1, 1, 4}}) {
    CAPTURE(r.ell);
    auto w = generator_weights(r.ell);
    CHECK(w.k0 == r.k0);
    CHECK(w.k1 == r.k1);
    CHECK(w.k2 == r.k2);
  }
  CHECK_THROWS_AS(generator_weights(13), ModularError);
  CHECK_THROWS_AS(generators(4, 8), ModularError);
}

TEST_CASE("theta series of the level lattices L0") {
  struct Row {
    LatticePtr lattice;
    std::initializer_list<long> coeffs;
  };
  const Row rows[] = {
      {make_e8(), {1, 0, 240, 0, 2160, 0, 6720}},
      {make_d4(), {1, 0, 24, 0, 24, 0, 96}},
      {make_a2(), {1, 0, 6, 0, 0, 0, 6}},
      {make_a4(), {1, 0, 20, 0, 30, 0, 60}},
      {binary_form("F7", 2, 1, 4), {1, 0, 2, 0, 4, 0, 0}},
      {binary_form("F11", 2, 1, 6), {1, 0, 2, 0, 0, 0, 4}},
      {binary_form("F23a", 4, 1, 6), {1, 0, 0, 0, 2, 0, 2}},
      {binary_form("F23b", 2, 1, 12), {1, 0, 2, 0, 0, 0, 0}},
  };
  for (const auto& r : rows) {
    CAPTURE(r.lattice->name());
    CHECK(theta_by_enumeration(r.lattice, 6) == from_ints(r.coeffs, 6));
  }
  auto g1 = generators(1, 8);
  CHECK(g1.theta0.coeff(8) == 17520);
  CHECK(g1.theta0 == eisenstein(4, 8));
  // the level 5 generator is the 5-modular L0_5, not A4 (determinant 5)
  CHECK(make_a4()->determinant() == 5);
  auto g5 = generators(5, 8);
  CHECK(g5.theta0 == from_ints({1, 0, 6, 0, 18, 0, 24, 0, 42}, 8));
  auto g23 = generators(23, 8);
  CHECK(g23.theta0 == from_ints({1, 0, 0, 0, 2, 0, 2, 0, 2}, 8));
  CHECK(g23.theta0_alt == from_ints({1, 0, 2, 0, 0, 0, 0, 0, 2}, 8));
  for (int ell : supported_levels()) {
    CAPTURE(ell);
    auto g = generators(ell, 8);
    auto w = generator_weights(ell);
    CHECK(g.delta == eta_product(ell, w.k1, 8));
    CHECK(g.theta0.coeff(0) == 1);
    CHECK(g.phi.valuation() == 2);
    CHECK(g.phi.coeff(2) == 1);
  }
}

TEST_CASE("Phi generators") {
  struct Row {
    int ell;
    std::initializer_list<long> coeffs;
  };
  const Row rows[] = {
      {1, {0, 0, 1, 0, -528, 0, -4284, 0, 147712}}, {2, {0, 0, 1, 0, -88, 0, 252, 0, 64}},
      {5, {0, 0, 1, 0, -14, 0, -48, 0, 68}},        {7, {0, 0, 1, 0, -10, 0, -14, 0, 68}},
      {11, {0, 0, 1, 0, -6, 0, -3, 0, -14}},        {23, {0, 0, 1, 0, -2, 0, -5, 0, -4}},
  };
  for (const auto& r : rows) {
    CAPTURE(r.ell);
    CHECK(generators(r.ell, 8).phi == from_ints(r.coeffs, 8));
  }
  // level 1: Phi_36 = Delta_24 * E_6
  auto g1 = generators(1, 16);
  CHECK(g1.phi == eta_product(1, 12, 16) * eisenstein(6, 16));
}

TEST_CASE("level 3 Phi does not depend on the direction and squares into Mod+") {
  auto a = generators(3, 20, 1), b = generators(3, 20, 99);
  CHECK(a.phi == b.phi);
  CHECK(a.phi.truncated(8) == from_ints({0, 0, 1, 0, -42, 0, 171, 0, -248}, 8));
  CHECK(a.phi.truncated(8) != from_ints({0, 0, 1, 0, -14, 0, 48, 0, 68}, 8));
  auto mod18 = modular_space(a, 18, 1, false, {});
  CHECK(mod18.basis.size() == 4);
  CHECK(in_span(mod18, (a.phi * a.phi).truncated(20)));
  // the printed row fails the same test
  auto printed = from_ints({0, 0, 1, 0, -14, 0, 48, 0, 68}, 8);
  auto mod18_8 = modular_space(generators(3, 8), 18, 1, false, {});
  CHECK(in_span(mod18_8, (a.phi * a.phi).truncated(8)));
  CHECK_FALSE(in_span(mod18_8, (printed * printed).truncated(8)));
}

TEST_CASE("harmonic theta series of E8") {
  auto e8 = make_e8();
  const int t = 12;
  for (std::uint64_t seed : {3u, 5u, 11u}) {
    CAPTURE(seed);
    auto e = random_direction(8, seed);
    for (int k : {2, 4, 6, 10})
      CHECK(harmonic_theta(e8, k, e, t).is_zero());
    auto h8 = harmonic_theta(e8, 8, e, t);
    CHECK(proportional(h8, eta_product(1, 12, t)));
  }
  CHECK(harmonic_theta(e8, 0, random_direction(8, 1), 8) == theta_by_enumeration(e8, 8));
  CHECK_THROWS_AS(harmonic_theta(e8, 2, RatVec(8), 8), std::invalid_argument);
  CHECK_THROWS_AS(harmonic_theta(e8, 3, random_direction(8, 1), 8), std::invalid_argument);
}

TEST_CASE("theta spaces for Leech and BW16") {
  auto g1 = generators(1, 12);
  auto d24 = eta_product(1, 12, 12);
  auto s12 = theta_space(g1, 24, 12, 4);
  REQUIRE(s12.basis.size() == 1);
  CHECK(s12.basis[0] == (d24 * d24).truncated(12));
  CHECK(theta_space(g1, 24, 6, 4).basis.empty());
  CHECK(theta_space(g1, 24, 2, 4).basis.empty());

  auto g2 = generators(2, 12);
  auto d16 = eta_product(2, 8, 12);
  auto s8 = theta_space(g2, 16, 8, 4);
  REQUIRE(s8.basis.size() == 1);
  CHECK(s8.basis[0] == (d16 * d16).truncated(12));
  CHECK_THROWS_AS(theta_space(generators(5, 8), 4, 2, 2), ModularError);
}

TEST_CASE("harmonic theta series lie in the predicted spaces") {
  struct Case {
    LatticePtr lattice;
    int ell;
    int truncation;
    int max_degree;
  };
  const Case cases[] = {
      {make_e8(), 1, 12, 16},   {make_d4(), 2, 16, 16},   {make_a2(), 3, 20, 16},
      {make_k12(), 3, 10, 12},  {make_bw16_reed_muller(), 2, 8, 10},
  };
  for (const auto& c : cases) {
    CAPTURE(c.lattice->name());
    auto gens = generators(c.ell, c.truncation);
    auto dual = c.ell == 1 ? c.lattice : dual_rescaled(c.lattice, c.ell);
    const Rational minimum_norm = minimum(c.lattice).first;
    for (int degree = 2; degree <= c.max_degree; degree += 2) {
      CAPTURE(degree);
      auto space = theta_space(gens, static_cast<int>(c.lattice->dim()), degree, minimum_norm);
      for (std::uint64_t seed : {2u, 7u, 13u}) {
        auto e = random_direction(c.lattice->dim(), seed);
        auto f = harmonic_theta(c.lattice, degree, e, c.truncation) + harmonic_theta(dual, degree, e, c.truncation);
        CHECK(in_span(space, f));
      }
    }
  }
}

TEST_CASE("Leech theta series fitted from its first shells") {
  auto g = generators(1, 12);
  auto leech = catalog_load("Leech");
  auto known = theta_by_enumeration(leech, 4);
  auto fitted = fit_modular(g, 24, known, 12);
  auto e8 = eisenstein(4, 12);
  CHECK(fitted == e8 * e8 * e8 - eta_product(1, 12, 12) * Rational(720));
  CHECK(fitted.coeff(4) == 196560);
  CHECK(fitted.coeff(6) == 16773120);
  CHECK(fitted.coeff(8) == 398034000);
  CHECK(fitted.coeff(10) == Integer("4629381120"));
  // direct enumeration through norm 6 agrees
  CHECK(theta_by_enumeration(leech, 6) == fitted.truncated(6));

  auto bad = known;
  bad.set_coeff(2, 2);
  CHECK_THROWS_AS(fit_modular(g, 24, bad, 12), ModularError);
  // m = 0 and m = 2 already fix the two coefficients; m = 0 alone does not
  CHECK(fit_modular(g, 24, theta_by_enumeration(leech, 2), 12) == fitted);
  CHECK_THROWS_AS(fit_modular(g, 24, theta_by_enumeration(leech, 0), 12), ModularError);
}
