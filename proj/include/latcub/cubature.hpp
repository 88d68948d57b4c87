#pragma once

#include "latcub/designs.hpp"
#include "latcub/lattice.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcub {

class CubatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lattice, or a lattice together with sqrt(ell) times its dual, in a shared frame.
struct LatticeSet {
  std::string id;
  std::vector<LatticePtr> members;
  int ell = 1;
  bool with_dual = false;

  std::size_t dim() const { return members.front()->dim(); }
};

LatticeSet make_lattice_set(const LatticePtr& lattice, bool with_dual);

// "NAME" or "NAME+dual" with a catalog name.
LatticeSet parse_lattice_set(const std::string& spec);

// Shell sizes |E_m| of a set, with where each number came from.
struct SetProfile {
  std::string id;
  std::size_t n = 0;
  int ell = 1;
  bool with_dual = false;
  Rational min_norm;
  std::map<int, Integer> sizes;
  std::map<int, std::string> sources;  // "enumeration" or "series"
  std::optional<QSeries> theta;         // fitted theta series of the set, when available

  Integer size(int m) const;
};

struct ProfileOptions {
  // Shells predicted to hold more vectors than this are taken from the fitted series.
  std::uint64_t count_budget = 20'000'000;
  EnumerationOptions enumeration;
  std::uint64_t seed = 1;  // random harmonic directions of the level generators
};

// Counts the requested shells. When the theta series of the set lies in
// Mod+_{n/2}(ell) it is fitted from the first shells and every enumerated
// count is checked against it.
SetProfile set_profile(const LatticeSet& set, const std::vector<int>& norms, const ProfileOptions& opt = {});

// Profile of a hypothetical extremal set: theta = c + O(q^min) with c = 1,
// or 2 for a lattice united with its dual; shell sizes from the fit.
SetProfile extremal_profile(const std::string& id, std::size_t n, int ell, const Rational& min_norm, bool with_dual,
                            const std::vector<int>& norms);

// One linear condition sum_j coeffs[j] W_j = rhs.
struct WeightEquation {
  int degree = 0;  // 0 for the normalization
  std::string label;
  std::vector<Rational> coeffs;
  Rational rhs;
  Rational residual;  // after solving
};

struct ModularSolution {
  bool feasible = false;
  std::string status;  // "ok", "nonpositive weight", "inconsistent", "underdetermined"
  std::vector<int> norms;
  std::vector<Integer> shell_sizes;
  std::vector<Rational> weights;  // per node of each shell; empty unless the system is consistent
  std::vector<int> degrees;       // even degrees that produced equations
  std::vector<int> skipped;       // even degrees skipped because d_k^G = 0
  std::vector<WeightEquation> equations;

  bool residuals_zero() const;
};

// Rejects repeated or empty shells and shells whose normalized node sets coincide.
void check_shells(const LatticeSet& set, const SetProfile& profile, const std::vector<int>& norms,
                  const EnumerationOptions& opt = {});

// Exact weights W_j from the theta-space equations of every even degree
// 2h <= t plus the normalization sum_j |E_{m_j}| W_j = 1. With a group
// name, degrees with no invariant harmonics are skipped.
ModularSolution solve_weights_modular(const SetProfile& profile, const std::vector<int>& norms, int t,
                                      const std::string& group = "", std::uint64_t seed = 1);
ModularSolution solve_weights_modular(const LatticeSet& set, const std::vector<int>& norms, int t,
                                      const std::string& group = "", const ProfileOptions& opt = {});

struct GramSolution {
  bool feasible = false;
  std::string status;  // as ModularSolution, plus "ambiguous rank"
  std::vector<int> norms;
  std::vector<double> weights;
  std::size_t rank = 0;
  double residual = 0;
  std::vector<double> singular_values;  // of the row-normalized system
};

struct GramOptions {
  double rank_tolerance = 1e-9;  // relative to the largest singular value
  std::size_t pair_cap = 1'000'000'000;
};

// Floating solve of {G_k W = 0 : k = 1..t} with the normalization, where
// (G_k)_{jj'} = sum over x in X_j, y in X_j' of Q_k(<x,y>).
GramSolution solve_weights_gram(const LatticeSet& set, const std::vector<int>& norms, int t,
                                const GramOptions& opt = {});

struct ShellGroup {
  int norm = 0;
  Integer count;
  Rational weight;
};

struct CubatureNode {
  std::vector<double> x;  // unit vector in orthonormal coordinates
  double weight = 0;
  std::optional<Rational> exact_weight;
  std::string exact;           // symbolic form in frame coordinates
  std::vector<std::size_t> shells;  // indices of the shell groups carrying the node
};

struct CubatureFormula {
  std::size_t n = 0;
  int t = 0;
  std::string set_id;
  std::string frame;
  std::vector<ShellGroup> shells;
  std::vector<CubatureNode> nodes;

  std::size_t size() const { return nodes.size(); }
  NodeSet node_set() const;
  bool exact() const;
};

struct AssembleOptions {
  bool allow_merged_positivity = false;
  std::size_t node_cap = 5'000'000;
  EnumerationOptions enumeration;
};

// Enumerates the shells, merges coinciding normalized nodes and checks that
// the exact weights sum to 1.
CubatureFormula assemble(const LatticeSet& set, const std::vector<int>& norms, const std::vector<Rational>& weights,
                         int t, const AssembleOptions& opt = {});

// Number of distinct normalized nodes; only shells that may share nodes are enumerated.
Integer distinct_size(const LatticeSet& set, const SetProfile& profile, const std::vector<int>& norms,
                      const EnumerationOptions& opt = {});

struct VerifyReport {
  bool ran = false;   // false when the pair cap refused the check
  bool pass = false;
  std::string message;
  std::optional<StrengthReport> strength;
};

VerifyReport verify(const CubatureFormula& formula, int t, const DefectOptions& opt = {});

struct ReduceReport {
  CubatureFormula formula;
  bool reduced = false;
  bool verified = false;
  std::size_t bound = 0;  // B(n,t)
  std::string message;
};

// Caratheodory elimination on the moment matrix of the monomials of degree
// t and t-1 (B(n,t) rows). The result is re-verified; on failure the
// original formula is returned.
ReduceReport reduce_support(const CubatureFormula& formula, int t, const DefectOptions& opt = {});

// Export: one record per node with 17 significant digits and exact forms.
void write_csv(std::ostream& out, const CubatureFormula& formula);
void write_jsonl(std::ostream& out, const CubatureFormula& formula);
// Reads the CSV written by write_csv (coordinates, weights and header fields).
CubatureFormula read_csv(std::istream& in);

}  // namespace latcub
