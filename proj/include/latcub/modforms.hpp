#pragma once

#include "latcub/lattice.hpp"
#include "latcub/qseries.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcub {

class ModularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Levels for which generator expansions are available.
const std::vector<int>& supported_levels();

struct GeneratorWeights {
  int k0 = 0, k1 = 0, k2 = 0;
};
GeneratorWeights generator_weights(int ell);

// theta0 = theta series of L0 (weight k0), delta = (eta(z) eta(ell z))^k1
// (weight k1), phi of weight k2 normalized to q^2 + O(q^4).
struct ModularGenerators {
  int ell = 0;
  GeneratorWeights weights;
  QSeries theta0;
  QSeries delta;
  QSeries phi;
  std::string l0_name;
  // Level 23 has two choices of L0; the second one lands here.
  QSeries theta0_alt;
  std::string l0_alt_name;
  // Coefficient of q^2 in the raw harmonic theta series before normalization.
  Rational phi_scale;
  RatVec phi_direction;
};

// Builds the generators by enumeration of the small lattices L0 and the
// harmonic theta series that define phi. `seed` fixes the random directions.
ModularGenerators generators(int ell, int truncation, std::uint64_t seed = 1);

// sum_x P(x) q^<x,x> with P the zonal harmonic of degree k (even) for the
// direction e (frame coordinates). Requires an integral lattice.
QSeries harmonic_theta(const LatticePtr& lattice, int k, const RatVec& direction, int truncation,
                       const EnumerationOptions& opt = {});

// Random direction with entries in [-range, range], not zero.
RatVec random_direction(std::size_t n, std::uint64_t seed, int range = 5);

// A graded piece of Mod+(ell), Pod+(ell) or Pod-(ell), optionally cut by
// vanishing conditions. Basis series are in reduced echelon form on their
// coefficient vectors.
struct SpaceBasis {
  int ell = 0;
  Rational weight;
  int parity = 1;  // +1 or -1
  bool cusp = true;
  std::vector<int> vanishing_orders;
  std::vector<QSeries> basis;
  std::vector<std::string> monomials;  // spanning monomials before the cut
};

// Monomials theta^a delta^b (parity +, b >= 1 when cusp) or
// phi theta^a delta^b (parity -) of the given weight, with the vanishing cut.
SpaceBasis modular_space(const ModularGenerators& gens, const Rational& weight, int parity, bool cusp,
                         const std::vector<int>& vanishing_orders);

// Space containing Theta_{L,P} + sign * Theta_{L',P} for every P in
// Har_{2h}(R^n), for L in Lat_n(ell) with minimum min_norm (ell in {1,2,3}).
SpaceBasis theta_space(const ModularGenerators& gens, int n, int degree, const Rational& min_norm,
                       int sign = 1);

// Fits a series of Mod+_{n/2}(ell) to known leading coefficients
// (indices 0..known.truncation()) and returns it to `truncation`. Throws
// ModularError if the data do not determine a unique consistent element.
QSeries fit_modular(const ModularGenerators& gens, int n, const QSeries& known, int truncation);

}  // namespace latcub
