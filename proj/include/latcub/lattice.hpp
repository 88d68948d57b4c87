#pragma once

#include "latcub/linalg.hpp"
#include "latcub/qseries.hpp"
#include "latcub/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcub {

// Coordinate system shared by lattices that may be united (a lattice and its
// rescaled dual). Frame vectors are rational; `metric` is the inner product
// on frame coordinates.
struct Frame {
  std::string id;
  RatMatrix metric;
  bool orthonormal = false;  // metric is the identity
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_orthonormal_frame(std::size_t n, Rational metric_scale = 1, std::string id = "");

// Catalog facts a lattice is checked against on load.
struct LatticeFacts {
  std::optional<bool> even;
  std::optional<int> ell;  // level: sqrt(ell) * dual is even of the same determinant
  std::optional<Rational> det;
  std::optional<Rational> min_norm;
  std::optional<Integer> kissing;  // number of vectors of minimal norm
};

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

// A positive definite lattice given by a basis.
//
// Basis vector i equals sqrt(scale2) * frame_basis.row(i) in the frame, so
// gram == scale2 * frame_basis * metric * frame_basisᵀ. For a lattice and
// its rescaled dual scale2 is 1 and ell respectively, which keeps every
// inner product inside Q + Q*sqrt(ell).
class Lattice {
 public:
  Lattice(std::string name, RatMatrix gram, RatMatrix frame_basis, Rational scale2, FramePtr frame,
          LatticeFacts facts = {});

  // Lattice known only through its Gram matrix; its frame is its own basis.
  static LatticePtr from_gram(std::string name, RatMatrix gram, LatticeFacts facts = {});

  // Lattice spanned by the rows of `basis` in an orthonormal frame scaled by
  // `metric_scale` (inner product = metric_scale * dot).
  static LatticePtr from_basis(std::string name, RatMatrix basis, Rational metric_scale = 1,
                               LatticeFacts facts = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }
  const RatMatrix& frame_basis() const { return frame_basis_; }
  const Rational& scale2() const { return scale2_; }
  const FramePtr& frame() const { return frame_; }
  const LatticeFacts& facts() const { return facts_; }

  Rational determinant() const { return latcub::determinant(gram_); }
  bool is_integral() const { return gram_.is_integral(); }
  bool is_even() const;

  Rational norm(const IntVec& coeffs) const;
  // Rational part of the vector in frame coordinates (without sqrt(scale2)).
  RatVec to_frame(const IntVec& coeffs) const;

 private:
  std::string name_;
  RatMatrix gram_;
  RatMatrix frame_basis_;
  Rational scale2_;
  FramePtr frame_;
  LatticeFacts facts_;
};

// sqrt(ell) * dual of `lattice`, expressed in the same frame.
LatticePtr dual_rescaled(const LatticePtr& lattice, int ell);

// Orthogonal direct sum (new frame is the product of the member frames).
LatticePtr direct_sum(const std::string& name, const std::vector<LatticePtr>& parts);

// Isometric rescaling by sqrt(factor) (Gram multiplied by factor).
LatticePtr rescaled(const LatticePtr& lattice, const Rational& factor, const std::string& name);

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerationOptions {
  std::size_t cap = 20'000'000;  // max stored vectors per shell
  unsigned threads = 0;          // 0 = hardware concurrency
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShellVector {
  std::size_t member = 0;  // index into ShellSet::sources
  IntVec coeffs;           // coordinates in the member's basis
};

// All vectors of squared norm `norm` in a lattice or a union of lattices.
struct ShellSet {
  std::vector<LatticePtr> sources;
  Rational norm;
  std::vector<ShellVector> vectors;
  std::vector<std::size_t> member_counts;  // vectors contributed per source before dedup
  bool members_intersected = false;

  std::size_t size() const { return vectors.size(); }
  RatVec frame_vector(std::size_t i) const;
};

ShellSet enumerate_shell(const LatticePtr& lattice, const Rational& norm, const EnumerationOptions& opt = {});

// Number of vectors of norm `norm`; streams without storing.
Integer count_shell(const LatticePtr& lattice, const Rational& norm, const EnumerationOptions& opt = {});

// Theta series sum_x q^<x,x> through norm `max_norm`; requires an integral lattice.
QSeries theta_by_enumeration(const LatticePtr& lattice, int max_norm, const EnumerationOptions& opt = {});

ShellSet union_shell(const std::vector<LatticePtr>& lattices, const Rational& norm,
                     const EnumerationOptions& opt = {});

// Minimal norm and number of minimal vectors.
std::pair<Rational, Integer> minimum(const LatticePtr& lattice, const EnumerationOptions& opt = {});

// Low level: visits every nonzero x with x^T G x <= bound, one of each
// pair ±x, for an integer Gram matrix. The visitor receives the worker index,
// the coordinates and the exact norm; workers run concurrently when
// threads > 1. Coordinates are in the input basis unless `input_coords` is
// false, in which case they refer to an internal reduced basis.
using BallVisitor = std::function<void(unsigned worker, const std::int64_t* x, std::int64_t norm)>;
void enumerate_half_ball(const std::vector<std::vector<std::int64_t>>& gram, std::int64_t bound,
                         const BallVisitor& visit, unsigned threads = 1, bool input_coords = true);

struct LllResult {
  std::vector<std::vector<std::int64_t>> gram;  // reduced Gram matrix
  std::vector<std::vector<std::int64_t>> u;     // rows express the reduced basis in the input basis
};
LllResult lll_reduce(const std::vector<std::vector<std::int64_t>>& gram);

// D * gram as 64-bit integers with D the least common denominator.
std::vector<std::vector<std::int64_t>> integer_gram(const RatMatrix& gram, Integer* scale = nullptr);

}  // namespace latcub
