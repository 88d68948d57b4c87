#include "doctest.h"
#include "latcub/bounds.hpp"
#include "latcub/gegenbauer.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace latcub;

TEST_CASE("Delsarte bound") {
  CHECK(delsarte(8, 7) == 240);
  CHECK(delsarte(24, 11) == 196560);
  CHECK(delsarte(4, 5) == 20);
  CHECK(delsarte_flagged(4, 5));
  CHECK(delsarte_plus_one(4, 5) == 21);
  CHECK_FALSE(delsarte_flagged(8, 7));
  CHECK(delsarte_plus_one(8, 7) == 240);
  CHECK(delsarte(23, 7) == 4600);
  // even strength: C(n+s-1,n-1) + C(n+s-2,n-1)
  CHECK(delsarte(3, 4) == 6 + 3);
  CHECK(delsarte(2, 4) == 5);
  CHECK_THROWS(delsarte(1, 3));
}

TEST_CASE("flagged rows quote D + 1") {
  struct Row {
    int n, t;
    long printed;
  };
  for (auto r : {Row{4, 5, 21}, Row{12, 5, 157}, Row{12, 7, 729}, Row{14, 5, 211}, Row{14, 7, 1121},
                 Row{16, 7, 1633}, Row{16, 9, 7753}, Row{20, 5, 421}, Row{20, 7, 3081}, Row{20, 9, 17711},
                 Row{23, 9, 29901}, Row{24, 5, 601}, Row{24, 7, 5201}}) {
    CAPTURE(r.n);
    CAPTURE(r.t);
    CHECK(delsarte_plus_one(r.n, r.t) == r.printed);
  }
}

TEST_CASE("B(n,t) is the dimension of Pol_t on the sphere") {
  for (int t = 0; t <= 12; ++t) CHECK(bound_B(2, t) == (t == 0 ? 1 : 2 * t + 1));
  CHECK(bound_B(4, 7) == 204);
  for (int n = 2; n <= 10; ++n)
    for (int t = 1; t <= 9; t += 2) CHECK(bound_B(n, t) == delsarte(n, 2 * t));
}

TEST_CASE("Yudin bound") {
  // n = 3: Q_{t+1}' ~ P_6' and the cap measure is linear, so the bound is 2 / (1 - gamma)
  const double a = 1386, b = -1260, c = 210;
  const double gamma = std::sqrt((-b + std::sqrt(b * b - 4 * a * c)) / (2 * a));
  auto y = yudin(3, 5);
  CHECK(y.gamma == doctest::Approx(gamma).epsilon(1e-10));
  CHECK(y.value == doctest::Approx(2 / (1 - gamma)).epsilon(1e-9));
  CHECK(y.error < 1e-6);

  auto y4 = yudin(4, 11);
  CHECK(y4.value <= 120);
  CHECK(y4.value > static_cast<double>(delsarte(4, 11).get_si()));
  for (int t = 1; t <= 9; t += 2) CHECK(yudin(6, t).value >= 2 - 1e-9);
  CHECK_THROWS_AS(yudin(2, 5), BoundError);
}

TEST_CASE("simplex on small programs") {
  SUBCASE("two variables") {
    auto r = lp_solve({1, 1}, {{1, 2}, {3, 1}}, {4, 6}, {0, 0}, {kInfinity, kInfinity});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(2.8));
    CHECK(r.x[0] == doctest::Approx(1.6));
    CHECK(r.x[1] == doctest::Approx(1.2));
  }
  SUBCASE("infeasible and unbounded") {
    CHECK(lp_solve({1}, {{1}}, {-1}, {0}, {kInfinity}).status == LpStatus::infeasible);
    CHECK(lp_solve({1}, {{-1}}, {1}, {0}, {kInfinity}).status == LpStatus::unbounded);
  }
  SUBCASE("free and boxed variables") {
    // maximize -x - y with x free, y in [-2, 3], x + y >= 1 and x <= 5
    auto r = lp_solve({-1, -1}, {{-1, -1}, {1, 0}}, {-1, 5}, {-kInfinity, -2}, {kInfinity, 3});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(-1));
  }
  SUBCASE("degenerate vertex") {
    // many constraints through the optimum (1,1)
    std::vector<std::vector<double>> a = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 3}};
    std::vector<double> b = {1, 1, 2, 3, 3, 6};
    auto r = lp_solve({1, 1}, a, b, {0, 0}, {kInfinity, kInfinity});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(2));
  }
  SUBCASE("random three-variable programs against vertex enumeration") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int i = 0; i < 6; ++i) {
        a.push_back({coef(rng), coef(rng), coef(rng)});
        b.push_back(1 + std::fabs(coef(rng)));
      }
      // the box keeps the program bounded
      for (int k = 0; k < 3; ++k) {
        std::vector<double> row(3, 0.0);
        row[k] = 1;
        a.push_back(row);
        b.push_back(2);
        row[k] = -1;
        a.push_back(row);
        b.push_back(2);
      }
      std::vector<double> c = {coef(rng), coef(rng), coef(rng)};
      double best = -kInfinity;
      const std::size_t m = a.size();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          for (std::size_t k = j + 1; k < m; ++k) {
            const auto &r0 = a[i], &r1 = a[j], &r2 = a[k];
            const double det = r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
                               r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
            if (std::fabs(det) < 1e-12) continue;
            std::array<double, 3> x{};
            for (int col = 0; col < 3; ++col) {
              auto e = [&](std::size_t row, int cc) { return cc == col ? b[row] : a[row][cc]; };
              x[col] = (e(i, 0) * (e(j, 1) * e(k, 2) - e(j, 2) * e(k, 1)) -
                        e(i, 1) * (e(j, 0) * e(k, 2) - e(j, 2) * e(k, 0)) +
                        e(i, 2) * (e(j, 0) * e(k, 1) - e(j, 1) * e(k, 0))) /
                       det;
            }
            bool ok = true;
            for (std::size_t row = 0; row < m && ok; ++row)
              ok = a[row][0] * x[0] + a[row][1] * x[1] + a[row][2] * x[2] <= b[row] + 1e-9;
            if (ok) best = std::max(best, c[0] * x[0] + c[1] * x[1] + c[2] * x[2]);
          }
      auto r = lp_solve(c, a, b, {-kInfinity, -kInfinity, -kInfinity}, {kInfinity, kInfinity, kInfinity});
      REQUIRE(r.status == LpStatus::optimal);
      CHECK(r.objective == doctest::Approx(best).epsilon(1e-9));
    }
  }
}

TEST_CASE("LP estimates round up to the tabulated bounds") {
  struct Row {
    int n, t, d;
    long printed;
  };
  for (auto r : {Row{4, 7, 5, 42}, Row{4, 11, 11, 120}, Row{8, 11, 8, 1856}}) {
    CAPTURE(r.n);
    CAPTURE(r.t);
    auto b = lp_estimate(r.n, r.t, r.d);
    REQUIRE(b.lp);
    CHECK(static_cast<long>(std::ceil(b.value - 1e-6)) == r.printed);
    CHECK(std::fabs(b.value - r.printed) <= 2);
    CHECK(b.lp->epsilon < 1e-3);
    CHECK(b.value >= static_cast<double>(delsarte(r.n, r.t).get_si()) - 1);
    // the certificate polynomial is nonnegative up to epsilon and has the sign pattern
    for (int i = 0; i <= 1000; ++i)
      CHECK(even_gegenbauer_value(r.n, b.lp->coefficients, i / 1000.0) >= -b.lp->epsilon - 1e-9);
    for (int k = 1; k <= r.d; ++k)
      if (2 * k > r.t) CHECK(b.lp->coefficients[k - 1] <= 1e-12);
  }
}

TEST_CASE("cutting planes reach the optimum of the full-grid LP") {
  const int n = 6, t = 7, d = 6, grid = 1500;
  Gegenbauer g(n);
  std::vector<double> c(d, 1.0), lower(d, -kInfinity), upper(d, kInfinity);
  for (int k = 1; k <= d; ++k)
    if (2 * k > t) upper[k - 1] = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> q(2 * d + 1), q1(2 * d + 1);
  g.values(2 * d, 1.0, q1.data());
  for (int i = 0; i <= grid; ++i) {
    g.values(2 * d, static_cast<double>(i) / grid, q.data());
    std::vector<double> row(d);
    for (int k = 1; k <= d; ++k) row[k - 1] = -q[2 * k] / q1[2 * k];
    a.push_back(row);
    b.push_back(1);
  }
  auto full = lp_solve(c, a, b, lower, upper);
  REQUIRE(full.status == LpStatus::optimal);
  auto est = lp_estimate(n, t, d, grid);
  CHECK(est.lp->g_at_one == doctest::Approx(1 + full.objective).epsilon(1e-9));
  CHECK(est.lp->active_points < static_cast<std::size_t>(grid + 1));
}

TEST_CASE("LP estimate grows with the degree and matches Delsarte at d = s") {
  const double d3 = lp_estimate(4, 7, 3).value;
  const double d4 = lp_estimate(4, 7, 4).value;
  const double d5 = lp_estimate(4, 7, 5).value;
  CHECK(d3 <= d4 + 1e-6);
  CHECK(d4 <= d5 + 1e-6);
  // with no negative coefficients allowed the optimum is the Delsarte value
  CHECK(d3 == doctest::Approx(static_cast<double>(delsarte(4, 7).get_si())).epsilon(1e-4));
  CHECK_THROWS_AS(lp_estimate(4, 8, 5), BoundError);
  CHECK_THROWS_AS(lp_estimate(4, 7, 2), BoundError);
}

TEST_CASE("even polynomials on [0,1] control [-1,1]") {
  auto b = lp_estimate(4, 7, 5);
  for (int i = 0; i <= 200; ++i) {
    const double u = i / 100.0 - 1;
    CHECK(even_gegenbauer_value(4, b.lp->coefficients, u) == doctest::Approx(even_gegenbauer_value(4, b.lp->coefficients, -u)));
  }
}

namespace {

// Monomial coefficients -> coefficients in the Q_k basis, exact.
std::vector<Rational> to_q_basis(Gegenbauer& g, std::vector<Rational> p) {
  std::vector<Rational> out(p.size());
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    const auto& q = g.coefficients(k);
    Rational c = p[k] / q[k];
    c.canonicalize();
    out[k] = c;
    for (int j = 0; j <= k; ++j) p[j] -= c * q[j];
  }
  return out;
}

}  // namespace

TEST_CASE("symmetrization: (1+u) F^(u) stays admissible and doubles the ratio") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> lambda(0.05, 1.0);
  for (auto [n, t, d] : {std::array<int, 3>{4, 7, 5}, std::array<int, 3>{8, 11, 8}}) {
    CAPTURE(n);
    auto b = lp_estimate(n, t, d, 400);
    Gegenbauer g(n);
    // G~ = G + epsilon in monomials, exact from the double coefficients
    std::vector<Rational> lifted(2 * d + 1);
    lifted[0] = Rational(1.0 + b.lp->epsilon);
    for (int k = 1; k <= d; ++k) {
      const auto& q = g.coefficients(2 * k);
      for (int j = 0; j <= 2 * k; ++j) lifted[j] += Rational(b.lp->coefficients[k - 1]) * q[j];
    }
    for (int trial = 0; trial < 5; ++trial) {
      // convex combination with the constant 1 is again feasible
      const Rational l(lambda(rng));
      std::vector<Rational> f(lifted.size());
      for (std::size_t j = 0; j < f.size(); ++j) f[j] = l * lifted[j];
      f[0] += 1 - l;
      std::vector<Rational> star(f.size() + 1);
      for (std::size_t j = 0; j < f.size(); ++j) {
        star[j] += f[j];
        star[j + 1] += f[j];
      }
      auto fq = to_q_basis(g, f);
      auto sq = to_q_basis(g, star);
      CHECK(sq[0] == fq[0]);
      for (std::size_t k = t + 1; k < sq.size(); ++k) CHECK(sq[k] <= 0);
      for (int i = 0; i <= 4000; ++i) {
        const double u = i / 2000.0 - 1;
        double v = 0, p = 1;
        for (const auto& c : star) {
          v += to_double(c) * p;
          p *= u;
        }
        CHECK(v >= -1e-9);
      }
      Rational f1 = 0, s1 = 0;
      for (const auto& c : f) f1 += c;
      for (const auto& c : star) s1 += c;
      CHECK(s1 / sq[0] == 2 * f1 / fq[0]);
    }
  }
}
