#pragma once

#include "latcub/lattice.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace latcub {

// Lattice spanned by rational generators in an orthonormal frame whose inner
// product is metric_scale * dot.
LatticePtr lattice_from_generators(const std::string& name, const std::vector<RatVec>& generators,
                                   const Rational& metric_scale = 1, LatticeFacts facts = {});

LatticePtr make_d4();
LatticePtr make_e8();
LatticePtr make_a2();
LatticePtr make_a4();
LatticePtr binary_form(const std::string& name, long a, long b, long c);

// 4-dimensional even lattice of minimum 4 and determinant 121 used for level 11.
LatticePtr make_l4_level11();

// 4-dimensional 5-modular lattice (determinant 25, six vectors of norm 2).
LatticePtr make_l0_level5();

// Binary code words as 0/1 vectors.
using Codeword = std::vector<int>;

// Generator matrix rows of the first order Reed-Muller code RM(1, m).
std::vector<Codeword> reed_muller_1(int m);

// Extended binary Golay code from the cyclic quadratic-residue code of length 23.
std::vector<Codeword> golay_cyclic_generators();

// Extended binary Golay code from the icosahedron: [I | J - A].
std::vector<Codeword> golay_icosahedron_generators();

// Span of a binary code (all 2^k words).
std::vector<Codeword> code_words(const std::vector<Codeword>& generators);

// {x in Z^16 : x mod 2 in RM(1,4), sum x = 0 mod 4} with inner product dot/2.
LatticePtr make_bw16_reed_muller();

// Z[i]-span of the rows of [[1,1],[0,1+i]]^{⊗3}, realified, inner product dot/2.
LatticePtr make_bw16_gaussian();

// Leech lattice from an extended Golay code, inner product dot/8.
LatticePtr make_leech(const std::vector<Codeword>& golay_generators, const std::string& name = "Leech");

// Coxeter-Todd lattice as an Eisenstein lattice in E^6.
LatticePtr make_k12();

// Odd unimodular 23-dimensional lattice with minimum 3: the projection onto
// v^⊥ of {x in Leech : x.v even} for a Leech vector v of norm 4.
LatticePtr make_o23(const LatticePtr& leech);

// Even neighbor of `lattice` at the prime p defined by v (coefficient vector
// in the lattice basis). Requires v not in pL and v.v = 0 mod 2p^2.
LatticePtr neighbor(const LatticePtr& lattice, const IntVec& v, int p, const std::string& name);

// Random neighbor at the prime p; returns nullptr when no admissible v was drawn.
LatticePtr random_neighbor(const LatticePtr& lattice, int p, std::mt19937_64& rng, const std::string& name);

// LLL-reduced Gram-only copy (same Gram class, smaller entries).
LatticePtr reduced_copy(const LatticePtr& lattice, const std::string& name);

// Isometry invariant: over the unordered pairs of minimal vectors with inner
// product min/2, the histogram of their number of common such neighbors.
std::map<long, long> minimal_vector_profile(const LatticePtr& lattice);

// Hill climb through p-neighbors from `start` towards an even lattice
// without vectors of norm 2: each step draws `candidates` neighbors and
// keeps the best one (occasionally a worse one). Deterministic in `seed`.
LatticePtr neighbor_search(const LatticePtr& start, int p, int candidates, std::uint64_t seed,
                           const std::string& name, int max_steps = 100000);

}  // namespace latcub
