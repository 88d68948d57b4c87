#include "doctest.h"
#include "latcub/catalog.hpp"
#include "latcub/constructions.hpp"
#include "latcub/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace latcub;

namespace {

QSeries ints(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QSeries(v, static_cast<int>(v.size()) - 1);
}

std::map<int, int> weight_distribution(const std::vector<Codeword>& words) {
  std::map<int, int> d;
  for (const auto& w : words) ++d[static_cast<int>(std::count(w.begin(), w.end(), 1))];
  return d;
}

// Brute-force count of lattice vectors of norm m with coefficients in [-r, r].
long brute_count(const Lattice& l, long m, int r) {
  const std::size_t n = l.dim();
  IntVec x(n, -r);
  long count = 0;
  while (true) {
    if (l.norm(x) == m) ++count;
    std::size_t i = 0;
    while (i < n && x[i] == r) x[i++] = -r;
    if (i == n) break;
    ++x[i];
  }
  return count;
}

}  // namespace

TEST_CASE("D4 and E8 theta series") {
  CHECK(theta_by_enumeration(make_d4(), 14) == ints({1, 0, 24, 0, 24, 0, 96, 0, 24, 0, 144, 0, 96, 0, 192}));
  CHECK(theta_by_enumeration(make_e8(), 8) == ints({1, 0, 240, 0, 2160, 0, 6720, 0, 17520}));
  CHECK(theta_by_enumeration(make_e8(), 0) == QSeries::one(0));
}

TEST_CASE("enumeration agrees with brute force on small lattices") {
  for (const auto& l : {make_a2(), make_a4(), make_d4(), binary_form("f", 2, 1, 4)}) {
    CAPTURE(l->name());
    for (long m = 1; m <= 8; ++m) {
      CAPTURE(m);
      CHECK(count_shell(l, m) == brute_count(*l, m, l->dim() <= 2 ? 6 : 4));
    }
  }
}

TEST_CASE("shells are complete, sorted, antipodal and duplicate free") {
  for (const auto& name : {"D4", "E8", "A4", "F11"}) {
    auto l = catalog_load(name);
    auto theta = theta_by_enumeration(l, 8);
    for (int m = 1; m <= 8; ++m) {
      auto s = enumerate_shell(l, m);
      CHECK(Rational(static_cast<long>(s.size())) == theta.coeff(m));
      CHECK(Integer(static_cast<unsigned long>(s.size())) == count_shell(l, m));
      std::set<IntVec> seen;
      for (const auto& v : s.vectors) {
        CHECK(l->norm(v.coeffs) == m);
        seen.insert(v.coeffs);
      }
      CHECK(seen.size() == s.size());
      for (const auto& v : s.vectors) {
        IntVec neg(v.coeffs.size());
        std::transform(v.coeffs.begin(), v.coeffs.end(), neg.begin(), [](std::int64_t x) { return -x; });
        CHECK(seen.count(neg) == 1);
      }
      CHECK(std::is_sorted(s.vectors.begin(), s.vectors.end(),
                           [](const ShellVector& a, const ShellVector& b) { return a.coeffs < b.coeffs; }));
    }
  }
}

TEST_CASE("enumeration cap") {
  EnumerationOptions opt;
  opt.cap = 100;
  CHECK_THROWS_AS(enumerate_shell(make_e8(), 2, opt), CapExceeded);
  CHECK(count_shell(make_e8(), 2, opt) == 240);
}

TEST_CASE("threaded enumeration is deterministic") {
  EnumerationOptions one, four;
  one.threads = 1;
  four.threads = 4;
  auto e8 = make_e8();
  auto a = enumerate_shell(e8, 4, one), b = enumerate_shell(e8, 4, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.vectors[i].coeffs == b.vectors[i].coeffs);
  CHECK(theta_by_enumeration(e8, 6, one) == theta_by_enumeration(e8, 6, four));
}

TEST_CASE("rescaled duals") {
  auto d4 = make_d4();
  auto d4p = dual_rescaled(d4, 2);
  CHECK(d4p->is_even());
  CHECK(d4p->determinant() == 4);
  CHECK(d4p->determinant() * d4->determinant() == 16);
  CHECK(theta_by_enumeration(d4p, 10) == theta_by_enumeration(d4, 10));
  CHECK(dual_rescaled(d4p, 2)->gram() == d4->gram());
  CHECK(d4p->scale2() == 2);

  auto u = union_shell({d4, d4p}, 2);
  CHECK(u.size() == 48);
  CHECK_FALSE(u.members_intersected);
  for (int m : {2, 4, 6, 8, 10}) CHECK_FALSE(union_shell({d4, d4p}, m).members_intersected);

  auto a2p = dual_rescaled(make_a2(), 3);
  CHECK(a2p->determinant() == 3);
  CHECK(a2p->is_even());

  auto e8 = make_e8();
  auto e8p = dual_rescaled(e8, 1);
  CHECK(e8p->determinant() == 1);
  CHECK(theta_by_enumeration(e8p, 6) == theta_by_enumeration(e8, 6));
  CHECK(union_shell({e8, e8p}, 2).size() == 240);

  auto e = union_shell({e8, e8}, 4);
  CHECK(e.size() == 2160);
}

TEST_CASE("Gram-only lattices and direct sums") {
  auto a2 = make_a2();
  CHECK(a2->gram() == RatMatrix({{2, 1}, {1, 2}}));
  auto s = direct_sum("A2+A2", {a2, a2});
  CHECK(s->determinant() == 9);
  CHECK(theta_by_enumeration(s, 6) == (theta_by_enumeration(a2, 6) * theta_by_enumeration(a2, 6)));
  auto r = rescaled(a2, 3, "sqrt3 A2");
  CHECK(r->gram() == a2->gram() * Rational(3));
  CHECK(r->scale2() == 3);
}

TEST_CASE("binary codes") {
  auto g1 = code_words(golay_cyclic_generators());
  auto g2 = code_words(golay_icosahedron_generators());
  const std::map<int, int> golay = {{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
  CHECK(weight_distribution(g1) == golay);
  CHECK(weight_distribution(g2) == golay);
  const std::map<int, int> rm = {{0, 1}, {8, 30}, {16, 1}};
  CHECK(weight_distribution(code_words(reed_muller_1(4))) == rm);
}

TEST_CASE("Barnes-Wall lattice from two constructions") {
  auto rm = make_bw16_reed_muller();
  auto gauss = make_bw16_gaussian();
  CHECK(rm->determinant() == 256);
  CHECK(gauss->determinant() == 256);
  auto theta = theta_by_enumeration(rm, 6);
  CHECK(theta == theta_by_enumeration(gauss, 6));
  auto d4 = theta_by_enumeration(make_d4(), 6);
  CHECK(theta == d4.pow(4) - Rational(96) * eta_product(2, 8, 6));
  CHECK(theta.coeff(4) == 4320);
  auto p = dual_rescaled(rm, 2);
  CHECK(p->is_even());
  CHECK(p->determinant() == 256);
}

TEST_CASE("Leech lattice from two Golay codes") {
  auto a = make_leech(golay_cyclic_generators(), "a");
  auto b = make_leech(golay_icosahedron_generators(), "b");
  for (const auto& l : {a, b}) {
    CHECK(l->determinant() == 1);
    CHECK(l->is_even());
    CHECK(enumerate_shell(l, 2).size() == 0);
    CHECK(count_shell(l, 4) == 196560);
  }
}

TEST_CASE("Coxeter-Todd lattice") {
  auto k12 = make_k12();
  CHECK(k12->determinant() == 729);
  CHECK(k12->is_even());
  CHECK(minimum(k12).first == 4);
  CHECK(minimum(k12).second == 756);
  auto kp = dual_rescaled(k12, 3);
  CHECK(kp->is_even());
  CHECK(kp->determinant() == 729);
  auto theta = theta_by_enumeration(k12, 6);
  CHECK(theta_by_enumeration(kp, 6) == theta);
  auto u = union_shell({k12, kp}, 4);
  CHECK(u.size() == 1512);
  CHECK_FALSE(u.members_intersected);
}

TEST_CASE("shorter Leech lattice") {
  auto o23 = make_o23(make_leech(golay_cyclic_generators()));
  CHECK(o23->dim() == 23);
  CHECK(o23->determinant() == 1);
  CHECK_FALSE(o23->is_even());
  auto theta = theta_by_enumeration(o23, 3);
  CHECK(theta.coeff(1) == 0);
  CHECK(theta.coeff(2) == 0);
  CHECK(theta.coeff(3) == 4600);
}

TEST_CASE("level 11 lattice L4 is unique up to theta series") {
  // all even Minkowski-type candidates with first diagonal entry 4 and entries bounded by reduction
  std::vector<QSeries> found;
  const long diag[] = {4, 6};
  for (long d1 : diag)
    for (long d2 : diag)
      for (long d3 : diag) {
        if (d1 > d2 || d2 > d3) continue;
        for (int mask = 0; mask < 15625; ++mask) {
          int m = mask;
          long off[6];
          for (auto& o : off) {
            o = m % 5 - 2;
            m /= 5;
          }
          RatMatrix g({{4, off[0], off[1], off[2]},
                       {off[0], d1, off[3], off[4]},
                       {off[1], off[3], d2, off[5]},
                       {off[2], off[4], off[5], d3}});
          if (determinant(g) != 121 || !is_positive_definite(g)) continue;
          auto l = Lattice::from_gram("c", g);
          if (minimum(l).first != 4) continue;
          found.push_back(theta_by_enumeration(l, 12));
        }
      }
  REQUIRE_FALSE(found.empty());
  for (const auto& t : found) CHECK(t == found.front());
  auto l4 = make_l4_level11();
  CHECK(theta_by_enumeration(l4, 12) == found.front());
  CHECK(dual_rescaled(l4, 11)->is_even());
}

TEST_CASE("catalog") {
  CHECK(catalog_load("D4")->dim() == 4);
  CHECK(catalog_load("A2")->gram() == RatMatrix({{2, 1}, {1, 2}}));
  CHECK_THROWS_AS(catalog_load("nope"), CatalogError);
  auto leech = catalog_load("Leech");
  CHECK(leech->dim() == 24);
  CHECK(theta_by_enumeration(catalog_load("F23a"), 8) == ints({1, 0, 0, 0, 2, 0, 2, 0, 2}));
  CHECK(theta_by_enumeration(catalog_load("F23b"), 8) == ints({1, 0, 2, 0, 0, 0, 0, 0, 2}));
}
