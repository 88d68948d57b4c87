#include "latcub/modforms.hpp"

#include "latcub/constructions.hpp"
#include "latcub/gegenbauer.hpp"
#include "latcub/linalg.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace latcub {

const std::vector<int>& supported_levels() {
  static const std::vector<int> levels = {1, 2, 3, 5, 7, 11, 23};
  return levels;
}

GeneratorWeights generator_weights(int ell) {
  const auto& lv = supported_levels();
  if (std::find(lv.begin(), lv.end(), ell) == lv.end())
    throw ModularError("unsupported level " + std::to_string(ell));
  GeneratorWeights w;
  if (ell == 1)
    w.k0 = 4;
  else if (ell % 4 == 3)
    w.k0 = 1;
  else
    w.k0 = 2;
  w.k1 = 24 / (ell + 1);
  w.k2 = w.k0 + w.k1 + 2;
  return w;
}

RatVec random_direction(std::size_t n, std::uint64_t seed, int range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-range, range);
  RatVec e(n);
  while (true) {
    bool nonzero = false;
    for (auto& x : e) {
      x = d(rng);
      if (x != 0) nonzero = true;
    }
    if (nonzero) return e;
  }
}

QSeries harmonic_theta(const LatticePtr& lattice, int k, const RatVec& direction, int truncation,
                       const EnumerationOptions& opt) {
  if (k < 0 || k % 2) throw std::invalid_argument("harmonic_theta: degree must be even and nonnegative");
  const std::size_t n = lattice->dim();
  if (direction.size() != n) throw std::invalid_argument("harmonic_theta: direction has the wrong length");
  if (!lattice->is_integral()) throw std::invalid_argument("harmonic_theta: lattice is not integral");
  const RatMatrix& metric = lattice->frame()->metric;
  const Rational e2 = bilinear(direction, metric, direction);
  if (e2 == 0) throw std::invalid_argument("harmonic_theta: zero direction");

  // <b_i, e> = sqrt(scale2) * w_i with w = frame_basis * metric * e
  RatVec w = lattice->frame_basis() * (metric * direction);
  const Integer den = common_denominator(w);
  std::vector<std::int64_t> wi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer v = w[i].get_num() * (den / w[i].get_den());
    if (!v.fits_slong_p()) throw std::overflow_error("harmonic_theta: direction entries too large");
    wi[i] = v.get_si();
  }
  auto gram = integer_gram(lattice->gram());  // Gram is integral, so no scaling

  // P depends on x only through (norm, <x,e>); count pairs of those
  const unsigned workers = opt.threads ? opt.threads : 1;
  std::vector<std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>> hist(workers);
  enumerate_half_ball(
      gram, truncation,
      [&](unsigned worker, const std::int64_t* x, std::int64_t norm) {
        __int128 t = 0;
        for (std::size_t i = 0; i < n; ++i) t += static_cast<__int128>(x[i]) * wi[i];
        if (t < 0) t = -t;
        ++hist[worker][{norm, static_cast<std::int64_t>(t)}];
      },
      workers);

  Gegenbauer g(static_cast<int>(n));
  const auto& c = g.coefficients(k);
  const Rational s = lattice->scale2();
  QSeries out(truncation);
  out.set_coeff(0, k == 0 ? Rational(1) : Rational(0));
  std::map<std::int64_t, Rational> sums;
  for (const auto& h : hist)
    for (const auto& [key, count] : h) {
      const Rational m(Integer(static_cast<long>(key.first)));
      Rational t(Integer(static_cast<long>(key.second)), den);
      t.canonicalize();
      // <x,e>^2 / |e|^2 = scale2 * t^2 / e2
      const Rational r = s * t * t / e2;
      Rational p = 0;
      for (int j = 0; j <= k; j += 2) {
        if (c[j] == 0) continue;
        p += c[j] * pow(r, j / 2) * pow(m, (k - j) / 2);
      }
      sums[key.first] += 2 * count * p;
    }
  for (const auto& [m, v] : sums) out.set_coeff(static_cast<int>(m), v);
  return out;
}

namespace {

struct PhiRecipe {
  std::vector<LatticePtr> parts;
  int degree;
  int sign;
};

PhiRecipe phi_recipe(int ell) {
  switch (ell) {
    case 1:
      return {{make_e8()}, 14, 1};
    case 2:
      return {{make_d4(), make_d4()}, 8, -1};
    case 3:
      return {{make_a2(), make_a2(), make_a2()}, 6, 1};
    case 5:
      return {{make_l0_level5()}, 6, 1};
    case 7:
      return {{binary_form("F7", 2, 1, 4), binary_form("F7", 2, 1, 4)}, 4, -1};
    case 11:
      return {{binary_form("F11", 2, 1, 6), make_l4_level11()}, 2, 1};
    case 23:
      return {{binary_form("F23a", 4, 1, 6), binary_form("F23b", 2, 1, 12)}, 2, 1};
  }
  throw ModularError("unsupported level " + std::to_string(ell));
}

LatticePtr level_lattice(int ell) {
  switch (ell) {
    case 1:
      return make_e8();
    case 2:
      return make_d4();
    case 3:
      return make_a2();
    case 5:
      return make_l0_level5();
    case 7:
      return binary_form("F7", 2, 1, 4);
    case 11:
      return binary_form("F11", 2, 1, 6);
    case 23:
      return binary_form("F23a", 4, 1, 6);
  }
  throw ModularError("unsupported level " + std::to_string(ell));
}

}  // namespace

ModularGenerators generators(int ell, int truncation, std::uint64_t seed) {
  if (truncation < 2) throw std::invalid_argument("generators: truncation must be at least 2");
  ModularGenerators g;
  g.ell = ell;
  g.weights = generator_weights(ell);
  auto l0 = level_lattice(ell);
  g.l0_name = l0->name();
  g.theta0 = theta_by_enumeration(l0, truncation);
  if (ell == 23) {
    auto alt = binary_form("F23b", 2, 1, 12);
    g.l0_alt_name = alt->name();
    g.theta0_alt = theta_by_enumeration(alt, truncation);
  }
  g.delta = eta_product(ell, g.weights.k1, truncation);

  const PhiRecipe recipe = phi_recipe(ell);
  LatticePtr l = recipe.parts.size() == 1 ? recipe.parts.front() : direct_sum("phi", recipe.parts);
  LatticePtr lp = ell == 1 ? nullptr : dual_rescaled(l, ell);
  for (int attempt = 0; attempt < 16; ++attempt) {
    RatVec e = random_direction(l->dim(), seed + 7919 * attempt);
    QSeries raw = harmonic_theta(l, recipe.degree, e, truncation);
    if (lp) {
      QSeries other = harmonic_theta(lp, recipe.degree, e, truncation);
      raw = recipe.sign > 0 ? raw + other : raw - other;
    }
    if (raw.coeff(2) == 0) continue;
    g.phi_scale = raw.coeff(2);
    g.phi_direction = e;
    g.phi = raw * (Rational(1) / raw.coeff(2));
    return g;
  }
  throw ModularError("generators: no direction gave a nonzero harmonic theta series");
}

SpaceBasis modular_space(const ModularGenerators& gens, const Rational& weight, int parity, bool cusp,
                         const std::vector<int>& vanishing_orders) {
  SpaceBasis out;
  out.ell = gens.ell;
  out.weight = weight;
  out.weight.canonicalize();
  out.parity = parity;
  out.cusp = cusp;
  out.vanishing_orders = vanishing_orders;
  if (out.weight.get_den() != 1) return out;
  const long w = out.weight.get_num().get_si() - (parity < 0 ? gens.weights.k2 : 0);
  if (w < 0) return out;
  const int trunc = gens.delta.truncation();
  const int k0 = gens.weights.k0, k1 = gens.weights.k1;
  std::vector<QSeries> monos;
  for (long b = (parity > 0 && cusp) ? 1 : 0; b * k1 <= w; ++b) {
    if ((w - b * k1) % k0) continue;
    const long a = (w - b * k1) / k0;
    QSeries s = gens.theta0.pow(static_cast<int>(a)) * gens.delta.pow(static_cast<int>(b));
    std::string label = "theta^" + std::to_string(a) + " delta^" + std::to_string(b);
    if (parity < 0) {
      s = gens.phi * s;
      label = "phi " + label;
    }
    monos.push_back(s.truncated(trunc));
    out.monomials.push_back(label);
  }
  if (monos.empty()) return out;

  std::vector<RatVec> combos;
  std::vector<int> cut;
  for (int m : vanishing_orders)
    if (m <= trunc) cut.push_back(m);
  if (cut.empty()) {
    for (std::size_t i = 0; i < monos.size(); ++i) {
      RatVec v(monos.size(), Rational(0));
      v[i] = 1;
      combos.push_back(v);
    }
  } else {
    RatMatrix a(cut.size(), monos.size());
    for (std::size_t r = 0; r < cut.size(); ++r)
      for (std::size_t c = 0; c < monos.size(); ++c) a(r, c) = monos[c].coeff(cut[r]);
    combos = nullspace(a);
  }
  if (combos.empty()) return out;

  RatMatrix coeffs(combos.size(), static_cast<std::size_t>(trunc) + 1);
  for (std::size_t r = 0; r < combos.size(); ++r)
    for (std::size_t c = 0; c < monos.size(); ++c)
      for (int m = 0; m <= trunc; ++m) coeffs(r, m) += combos[r][c] * monos[c].coeff(m);
  auto pivots = rref(coeffs);
  if (pivots.size() < combos.size())
    throw ModularError("modular_space: monomials are dependent at truncation " + std::to_string(trunc));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<Rational> v(static_cast<std::size_t>(trunc) + 1);
    for (int m = 0; m <= trunc; ++m) v[m] = coeffs(r, m);
    out.basis.emplace_back(v, trunc);
  }
  return out;
}

SpaceBasis theta_space(const ModularGenerators& gens, int n, int degree, const Rational& min_norm, int sign) {
  if (gens.ell > 3) throw ModularError("theta_space: level must be 1, 2 or 3");
  if (degree < 2 || degree % 2) throw std::invalid_argument("theta_space: degree must be even and positive");
  const int parity = ((degree % 4 == 0) ? 1 : -1) * (sign > 0 ? 1 : -1);
  std::vector<int> vanish;
  for (int m = 1; m < min_norm; ++m) vanish.push_back(m);
  return modular_space(gens, Rational(n, 2) + degree, parity, true, vanish);
}

QSeries fit_modular(const ModularGenerators& gens, int n, const QSeries& known, int truncation) {
  if (gens.delta.truncation() < truncation) throw ModularError("fit_modular: generators are truncated too early");
  auto space = modular_space(gens, Rational(n, 2), 1, false, {});
  const std::size_t dim = space.basis.size();
  if (dim == 0) throw ModularError("fit_modular: empty space");
  const int slots = known.truncation();
  RatMatrix a(static_cast<std::size_t>(slots) + 1, dim);
  RatVec b(static_cast<std::size_t>(slots) + 1);
  for (int m = 0; m <= slots; ++m) {
    for (std::size_t j = 0; j < dim; ++j) a(m, j) = space.basis[j].coeff(m);
    b[m] = known.coeff(m);
  }
  auto sol = solve_exact(a, b);
  if (sol.status == SolveStatus::inconsistent)
    throw ModularError("fit_modular: known coefficients are not those of a modular form of weight n/2");
  if (sol.status == SolveStatus::underdetermined)
    throw ModularError("fit_modular: too few known coefficients to determine the series");
  QSeries out(truncation);
  for (std::size_t j = 0; j < dim; ++j) out = out + space.basis[j].truncated(truncation) * sol.x[j];
  return out;
}

}  // namespace latcub
