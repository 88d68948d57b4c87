#include "latcub/cubature.hpp"

#include "latcub/bounds.hpp"
#include "latcub/catalog.hpp"
#include "latcub/groups.hpp"
#include "latcub/modforms.hpp"

#include <Eigen/Dense>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

namespace latcub {

namespace {

using Key = std::vector<Integer>;

std::string decimal17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool possibly_coincident(const LatticeSet& set, int m1, int m2) {
  const Rational prod(static_cast<long>(m1) * m2);
  if (is_rational_square(prod)) return true;
  return set.with_dual && is_rational_square(prod / set.ell);
}

// Normalized-node keys of E_m: the primitive integer direction of the frame vector.
std::vector<Key> shell_keys(const LatticeSet& set, int m, const EnumerationOptions& opt) {
  std::vector<Key> keys;
  for (const auto& member : set.members) {
    auto shell = enumerate_shell(member, Rational(m), opt);
    for (std::size_t i = 0; i < shell.size(); ++i) keys.push_back(primitive_direction(shell.frame_vector(i)));
  }
  return keys;
}

void require_norms(const std::vector<int>& norms) {
  if (norms.empty()) throw CubatureError("no shells given");
  std::set<int> seen;
  for (int m : norms) {
    if (m <= 0) throw CubatureError("shell norms must be positive");
    if (!seen.insert(m).second) throw CubatureError("shell " + std::to_string(m) + " listed twice");
  }
}

// Cholesky factor L of the frame metric (metric = L L^T) in doubles.
Eigen::MatrixXd frame_factor(const Frame& frame) {
  const std::size_t n = frame.metric.rows();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = to_double(frame.metric(i, j));
  if (frame.orthonormal) return Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw CubatureError("frame metric is not positive definite");
  return llt.matrixL();
}

}  // namespace

LatticeSet make_lattice_set(const LatticePtr& lattice, bool with_dual) {
  LatticeSet set;
  set.ell = lattice->facts().ell.value_or(1);
  set.with_dual = with_dual;
  set.members = {lattice};
  set.id = lattice->name();
  if (with_dual) {
    if (set.ell == 1) throw CubatureError(lattice->name() + " is unimodular; its rescaled dual is itself");
    set.members.push_back(dual_rescaled(lattice, set.ell));
    set.id += "+dual";
  }
  return set;
}

LatticeSet parse_lattice_set(const std::string& spec) {
  const std::string suffix = "+dual";
  if (spec.size() > suffix.size() && spec.compare(spec.size() - suffix.size(), suffix.size(), suffix) == 0)
    return make_lattice_set(catalog_load(spec.substr(0, spec.size() - suffix.size())), true);
  return make_lattice_set(catalog_load(spec), false);
}

Integer SetProfile::size(int m) const {
  auto it = sizes.find(m);
  if (it == sizes.end()) throw CubatureError("shell " + std::to_string(m) + " of " + id + " was not counted");
  return it->second;
}

SetProfile set_profile(const LatticeSet& set, const std::vector<int>& norms, const ProfileOptions& opt) {
  SetProfile p;
  p.id = set.id;
  p.n = set.dim();
  p.ell = set.ell;
  p.with_dual = set.with_dual;
  p.min_norm = minimum(set.members.front(), opt.enumeration).first;
  for (const auto& l : set.members) p.min_norm = std::min(p.min_norm, minimum(l, opt.enumeration).first);
  const int max_norm = norms.empty() ? 0 : *std::max_element(norms.begin(), norms.end());

  auto count = [&](int m) {
    Integer c = 0;
    for (const auto& l : set.members) c += count_shell(l, Rational(m), opt.enumeration);
    return c;
  };
  const bool fit = p.n % 2 == 0 && (p.ell == 1 || set.with_dual) && (p.ell == 1 || p.ell == 2 || p.ell == 3) &&
                   p.min_norm.get_den() == 1;
  if (fit) {
    const int m0 = static_cast<int>(p.min_norm.get_num().get_si());
    const int trunc = std::max(max_norm, m0);
    const auto gens = generators(p.ell, trunc, opt.seed);
    // widen the known range until the fit is unique
    for (int k = m0; k <= trunc && !p.theta; ++k) {
      QSeries known(k);
      for (const auto& l : set.members) known = known + theta_by_enumeration(l, k, opt.enumeration);
      try {
        p.theta = fit_modular(gens, static_cast<int>(p.n), known, trunc);
      } catch (const ModularError&) {
      }
    }
  }
  for (int m : norms) {
    if (p.theta) {
      const Rational predicted = p.theta->coeff(m);
      if (predicted.get_den() != 1 || predicted < 0) throw CubatureError("fitted theta series is not integral");
      if (predicted <= Rational(static_cast<double>(opt.count_budget))) {
        Integer c = count(m);
        if (Rational(c) != predicted)
          throw CubatureError("shell " + std::to_string(m) + " of " + set.id + ": enumeration gives " + c.get_str() +
                              " but the fitted series gives " + predicted.get_str());
        p.sizes[m] = c;
        p.sources[m] = "enumeration";
      } else {
        p.sizes[m] = predicted.get_num();
        p.sources[m] = "series";
      }
    } else {
      p.sizes[m] = count(m);
      p.sources[m] = "enumeration";
    }
  }
  return p;
}

SetProfile extremal_profile(const std::string& id, std::size_t n, int ell, const Rational& min_norm, bool with_dual,
                            const std::vector<int>& norms) {
  if (min_norm.get_den() != 1) throw CubatureError("extremal_profile: minimum must be an integer");
  SetProfile p;
  p.id = id;
  p.n = n;
  p.ell = ell;
  p.with_dual = with_dual;
  p.min_norm = min_norm;
  const int m0 = static_cast<int>(min_norm.get_num().get_si());
  const int max_norm = std::max(m0, norms.empty() ? 0 : *std::max_element(norms.begin(), norms.end()));
  QSeries known(m0 - 1);
  known.set_coeff(0, with_dual ? 2 : 1);
  p.theta = fit_modular(generators(ell, max_norm), static_cast<int>(n), known, max_norm);
  for (int m : norms) {
    p.sizes[m] = p.theta->coeff(m).get_num();
    p.sources[m] = "series";
  }
  return p;
}

bool ModularSolution::residuals_zero() const {
  if (weights.empty()) return false;
  return std::all_of(equations.begin(), equations.end(), [](const WeightEquation& e) { return e.residual == 0; });
}

void check_shells(const LatticeSet& set, const SetProfile& profile, const std::vector<int>& norms,
                  const EnumerationOptions& opt) {
  require_norms(norms);
  for (int m : norms)
    if (profile.size(m) == 0) throw CubatureError("shell " + std::to_string(m) + " of " + set.id + " is empty");
  for (std::size_t i = 0; i < norms.size(); ++i)
    for (std::size_t j = i + 1; j < norms.size(); ++j) {
      if (profile.size(norms[i]) != profile.size(norms[j]) || !possibly_coincident(set, norms[i], norms[j])) continue;
      auto a = shell_keys(set, norms[i], opt), b = shell_keys(set, norms[j], opt);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a == b)
        throw CubatureError("shells " + std::to_string(norms[i]) + " and " + std::to_string(norms[j]) + " of " +
                            set.id + " have the same normalized nodes; the weight system is degenerate");
    }
}

ModularSolution solve_weights_modular(const SetProfile& profile, const std::vector<int>& norms, int t,
                                      const std::string& group, std::uint64_t seed) {
  require_norms(norms);
  if (profile.n % 2 != 0)
    throw CubatureError("out of scope (odd-lattice harmonic theta): dimension " + std::to_string(profile.n));
  if (profile.ell < 1 || profile.ell > 3) throw CubatureError("modular solver needs ell in {1,2,3}");
  if (t < 0) throw CubatureError("strength must be nonnegative");
  ModularSolution sol;
  sol.norms = norms;
  for (int m : norms) {
    sol.shell_sizes.push_back(profile.size(m));
    if (sol.shell_sizes.back() == 0) throw CubatureError("shell " + std::to_string(m) + " is empty");
  }
  const int max_norm = *std::max_element(norms.begin(), norms.end());
  const auto gens = generators(profile.ell, max_norm, seed);
  std::optional<InvariantDims> dims;
  if (!group.empty()) {
    auto g = named_group(group);
    if (g.n != profile.n) throw CubatureError("group " + group + " acts in the wrong dimension");
    dims = molien_invariant_dims(g, t);
  }
  const std::vector<int> signs =
      profile.ell == 1 || profile.with_dual ? std::vector<int>{1} : std::vector<int>{1, -1};
  for (int deg = 2; deg <= t; deg += 2) {
    if (dims && dims->d[deg] == 0) {
      sol.skipped.push_back(deg);
      continue;
    }
    bool any = false;
    for (int sign : signs) {
      auto space = theta_space(gens, static_cast<int>(profile.n), deg, profile.min_norm, sign);
      for (std::size_t i = 0; i < space.basis.size(); ++i) {
        WeightEquation e;
        e.degree = deg;
        e.label = "degree " + std::to_string(deg) + (sign > 0 ? " +" : " -") + " basis " + std::to_string(i + 1);
        for (int m : norms) e.coeffs.push_back(space.basis[i].coeff(m) / pow(Rational(m), deg / 2));
        e.rhs = 0;
        sol.equations.push_back(std::move(e));
        any = true;
      }
    }
    if (any) sol.degrees.push_back(deg);
  }
  WeightEquation norm;
  norm.label = "normalization";
  for (const auto& s : sol.shell_sizes) norm.coeffs.emplace_back(s);
  norm.rhs = 1;
  sol.equations.push_back(norm);

  RatMatrix a(sol.equations.size(), norms.size());
  RatVec b(sol.equations.size());
  for (std::size_t i = 0; i < sol.equations.size(); ++i) {
    for (std::size_t j = 0; j < norms.size(); ++j) a(i, j) = sol.equations[i].coeffs[j];
    b[i] = sol.equations[i].rhs;
  }
  auto solved = solve_exact(a, b);
  if (solved.status == SolveStatus::inconsistent) {
    sol.status = "inconsistent";
    return sol;
  }
  if (solved.status == SolveStatus::underdetermined) {
    sol.status = "underdetermined";
    return sol;
  }
  sol.weights = solved.x;
  for (auto& e : sol.equations) {
    Rational r = -e.rhs;
    for (std::size_t j = 0; j < norms.size(); ++j) r += e.coeffs[j] * sol.weights[j];
    e.residual = r;
  }
  sol.feasible = std::all_of(sol.weights.begin(), sol.weights.end(), [](const Rational& w) { return w > 0; });
  sol.status = sol.feasible ? "ok" : "nonpositive weight";
  return sol;
}

ModularSolution solve_weights_modular(const LatticeSet& set, const std::vector<int>& norms, int t,
                                      const std::string& group, const ProfileOptions& opt) {
  require_norms(norms);
  auto profile = set_profile(set, norms, opt);
  check_shells(set, profile, norms, opt.enumeration);
  return solve_weights_modular(profile, norms, t, group, opt.seed);
}

// ---------------------------------------------------------------------------
// Gram-kernel solver

namespace {

struct ShellBlock {
  std::size_t shell = 0;
  std::size_t member = 0;
  std::vector<std::vector<std::int64_t>> coeffs;
};

// Histogram of the integer inner-product numerators between two blocks.
class Histogram {
 public:
  explicit Histogram(std::int64_t bound) : bound_(bound), counts_(2 * static_cast<std::size_t>(bound) + 1, 0) {}
  void add(std::int64_t v, std::uint64_t c) {
    if (v < -bound_ || v > bound_) throw CubatureError("inner product outside the Cauchy-Schwarz bound");
    counts_[static_cast<std::size_t>(v + bound_)] += c;
  }
  template <class F>
  void for_each(F f) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i]) f(static_cast<std::int64_t>(i) - bound_, counts_[i]);
  }

 private:
  std::int64_t bound_;
  std::vector<std::uint64_t> counts_;
};

std::vector<std::vector<std::int64_t>> to_int64(const RatMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1 || !m(i, j).get_num().fits_slong_p())
        throw CubatureError("cross Gram matrix does not fit 64-bit integers");
      out[i][j] = m(i, j).get_num().get_si();
    }
  return out;
}

}  // namespace

GramSolution solve_weights_gram(const LatticeSet& set, const std::vector<int>& norms, int t, const GramOptions& opt) {
  require_norms(norms);
  const std::size_t r = norms.size(), nm = set.members.size(), n = set.dim();
  std::vector<ShellBlock> blocks;
  double total = 0;
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t s = 0; s < nm; ++s) {
      auto shell = enumerate_shell(set.members[s], Rational(norms[j]));
      if (shell.size() == 0 && nm == 1) throw CubatureError("shell " + std::to_string(norms[j]) + " is empty");
      ShellBlock b;
      b.shell = j;
      b.member = s;
      for (auto& v : shell.vectors) b.coeffs.emplace_back(v.coeffs.begin(), v.coeffs.end());
      total += static_cast<double>(b.coeffs.size());
      blocks.push_back(std::move(b));
    }
  if (total * total > static_cast<double>(opt.pair_cap))
    throw PairCapExceeded("Gram solver: " + std::to_string(static_cast<long long>(total)) +
                          " nodes exceed the pair cap");

  // cross[s][s'] = D * B_s M B_s'^T as integers, inner product = sqrt(c_s c_s') * value / D
  std::vector<std::vector<std::vector<std::vector<std::int64_t>>>> cross(nm, std::vector<std::vector<std::vector<std::int64_t>>>(nm));
  std::vector<std::vector<Integer>> denom(nm, std::vector<Integer>(nm));
  const RatMatrix& metric = set.members.front()->frame()->metric;
  for (std::size_t s = 0; s < nm; ++s)
    for (std::size_t s2 = 0; s2 < nm; ++s2) {
      RatMatrix c = set.members[s]->frame_basis() * metric * set.members[s2]->frame_basis().transpose();
      Integer d = 1;
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t k = 0; k < c.cols(); ++k) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c(i, k).get_den_mpz_t());
      denom[s][s2] = d;
      cross[s][s2] = to_int64(c * Rational(d));
    }

  const Gegenbauer geg(static_cast<int>(n));
  // G[k](j, j') and the magnitude scale used for zero decisions
  std::vector<Eigen::MatrixXd> gk(t + 1, Eigen::MatrixXd::Zero(r, r)), sk(t + 1, Eigen::MatrixXd::Zero(r, r));
  std::vector<double> q(static_cast<std::size_t>(t) + 1);
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a; b < blocks.size(); ++b) {
      const auto& A = blocks[a];
      const auto& B = blocks[b];
      if (A.coeffs.empty() || B.coeffs.empty()) continue;
      const std::size_t s = A.member, s2 = B.member;
      const double ma = norms[A.shell], mb = norms[B.shell];
      const double ca = to_double(set.members[s]->scale2()), cb = to_double(set.members[s2]->scale2());
      const double d = to_double(Rational(denom[s][s2]));
      const auto bound = static_cast<std::int64_t>(d * std::sqrt(ma * mb / (ca * cb)) + 2);
      Histogram hist(bound);
      const auto& cm = cross[s][s2];
      std::vector<std::int64_t> w(n);
      for (std::size_t jb = 0; jb < B.coeffs.size(); ++jb) {
        const auto& y = B.coeffs[jb];
        for (std::size_t i = 0; i < n; ++i) {
          std::int64_t acc = 0;
          for (std::size_t k = 0; k < n; ++k) acc += cm[i][k] * y[k];
          w[i] = acc;
        }
        const std::size_t start = a == b ? jb : 0;
        for (std::size_t ia = start; ia < A.coeffs.size(); ++ia) {
          const auto& x = A.coeffs[ia];
          std::int64_t v = 0;
          for (std::size_t i = 0; i < n; ++i) v += x[i] * w[i];
          // ordered pairs: within a block, off-diagonal pairs count twice
          hist.add(v, a == b ? (ia == jb ? 1 : 2) : 1);
        }
      }
      const double scale = std::sqrt(ca * cb / (ma * mb)) / d;
      const std::size_t j1 = A.shell, j2 = B.shell;
      hist.for_each([&](std::int64_t v, std::uint64_t c) {
        const double u = std::clamp(static_cast<double>(v) * scale, -1.0, 1.0);
        geg.values(t, u, q.data());
        for (int k = 1; k <= t; ++k) {
          const double val = static_cast<double>(c) * q[k];
          // blocks of the same shell but different members are off-diagonal pairs within G(j,j)
          const double mult = (j1 == j2 && a != b) ? 2.0 : 1.0;
          gk[k](j1, j2) += mult * val;
          sk[k](j1, j2) += mult * std::fabs(val);
          if (j1 != j2) {
            gk[k](j2, j1) += val;
            sk[k](j2, j1) += std::fabs(val);
          }
        }
      });
    }

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (int k = 1; k <= t; ++k)
    for (std::size_t j = 0; j < r; ++j) {
      Eigen::RowVectorXd row(r);
      for (std::size_t j2 = 0; j2 < r; ++j2) {
        const double v = gk[k](j, j2);
        row(j2) = std::fabs(v) <= 1e-10 * sk[k](j, j2) ? 0.0 : v;
      }
      const double mx = row.cwiseAbs().maxCoeff();
      if (mx == 0) continue;
      rows.push_back(row / mx);
      rhs.push_back(0);
    }
  {
    Eigen::RowVectorXd row(r);
    double mx = 0;
    for (std::size_t j = 0; j < r; ++j) {
      double c = 0;
      for (const auto& b : blocks)
        if (b.shell == j) c += static_cast<double>(b.coeffs.size());
      row(j) = c;
      mx = std::max(mx, c);
    }
    rows.push_back(row / mx);
    rhs.push_back(1 / mx);
  }
  Eigen::MatrixXd a(rows.size(), r);
  Eigen::VectorXd bv(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(i) = rows[i];
    bv(i) = rhs[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  GramSolution sol;
  sol.norms = norms;
  for (Eigen::Index i = 0; i < sv.size(); ++i) sol.singular_values.push_back(sv(i));
  const double smax = sv.size() ? sv(0) : 0;
  bool ambiguous = false;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > opt.rank_tolerance * smax) ++sol.rank;
    if (sv(i) > opt.rank_tolerance * 1e-2 * smax && sv(i) < opt.rank_tolerance * 1e2 * smax) ambiguous = true;
  }
  svd.setThreshold(opt.rank_tolerance);
  Eigen::VectorXd w = svd.solve(bv);
  sol.residual = (a * w - bv).norm() / bv.norm();
  sol.weights.assign(w.data(), w.data() + w.size());
  if (ambiguous) {
    sol.status = "ambiguous rank";
  } else if (sol.rank < r) {
    sol.status = "underdetermined";
  } else if (sol.residual > 1e-8) {
    sol.status = "inconsistent";
  } else {
    sol.feasible = std::all_of(sol.weights.begin(), sol.weights.end(), [](double x) { return x > 0; });
    sol.status = sol.feasible ? "ok" : "nonpositive weight";
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Assembly, verification, reduction, export

NodeSet CubatureFormula::node_set() const {
  NodeSet s;
  s.dim = n;
  s.coords.reserve(n * nodes.size());
  s.weights.reserve(nodes.size());
  for (const auto& node : nodes) {
    s.coords.insert(s.coords.end(), node.x.begin(), node.x.end());
    s.weights.push_back(node.weight);
  }
  return s;
}

bool CubatureFormula::exact() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const CubatureNode& x) { return x.exact_weight.has_value(); });
}

CubatureFormula assemble(const LatticeSet& set, const std::vector<int>& norms, const std::vector<Rational>& weights,
                         int t, const AssembleOptions& opt) {
  require_norms(norms);
  if (weights.size() != norms.size()) throw CubatureError("assemble: one weight per shell is required");
  if (!opt.allow_merged_positivity)
    for (std::size_t j = 0; j < weights.size(); ++j)
      if (weights[j] <= 0) throw CubatureError("assemble: weight of shell " + std::to_string(norms[j]) + " is not positive");
  CubatureFormula f;
  f.n = set.dim();
  f.t = t;
  f.set_id = set.id;
  f.frame = set.members.front()->frame()->id;
  const auto factor = frame_factor(*set.members.front()->frame());
  std::map<Key, std::size_t> index;
  std::size_t stored = 0;
  for (std::size_t j = 0; j < norms.size(); ++j) {
    ShellGroup g;
    g.norm = norms[j];
    g.weight = weights[j];
    g.count = 0;
    for (const auto& member : set.members) {
      auto shell = enumerate_shell(member, Rational(norms[j]), opt.enumeration);
      stored += shell.size();
      if (stored > opt.node_cap) throw CubatureError("assemble: more than " + std::to_string(opt.node_cap) + " nodes");
      g.count += static_cast<unsigned long>(shell.size());
      Rational c2 = member->scale2() / norms[j];
      c2.canonicalize();
      const double c = std::sqrt(to_double(c2));
      for (std::size_t i = 0; i < shell.size(); ++i) {
        RatVec r = shell.frame_vector(i);
        auto key = primitive_direction(r);
        auto [it, fresh] = index.emplace(std::move(key), f.nodes.size());
        if (!fresh) {
          auto& node = f.nodes[it->second];
          node.shells.push_back(j);
          *node.exact_weight += weights[j];
          continue;
        }
        CubatureNode node;
        Eigen::VectorXd rv(f.n);
        for (std::size_t k = 0; k < f.n; ++k) rv(k) = to_double(r[k]);
        Eigen::VectorXd y = factor.transpose() * rv * c;
        y /= y.norm();
        node.x.assign(y.data(), y.data() + y.size());
        node.exact_weight = weights[j];
        std::string coords;
        for (std::size_t k = 0; k < f.n; ++k) coords += (k ? "," : "") + to_string(r[k]);
        node.exact = "sqrt(" + to_string(c2) + ")*(" + coords + ")";
        node.shells.push_back(j);
        f.nodes.push_back(std::move(node));
      }
    }
    f.shells.push_back(g);
  }
  Rational total = 0;
  for (auto& node : f.nodes) {
    if (*node.exact_weight <= 0) throw CubatureError("assemble: a merged node weight is not positive");
    node.weight = to_double(*node.exact_weight);
    total += *node.exact_weight;
  }
  if (total != 1) throw CubatureError("assemble: weights sum to " + to_string(total) + ", not 1");
  return f;
}

Integer distinct_size(const LatticeSet& set, const SetProfile& profile, const std::vector<int>& norms,
                      const EnumerationOptions& opt) {
  require_norms(norms);
  const std::size_t r = norms.size();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (possibly_coincident(set, norms[i], norms[j])) parent[find(i)] = find(j);
  Integer size = 0;
  std::map<std::size_t, std::vector<int>> components;
  for (std::size_t i = 0; i < r; ++i) components[find(i)].push_back(norms[i]);
  for (const auto& [root, ms] : components) {
    if (ms.size() == 1) {
      size += profile.size(ms.front());
      continue;
    }
    std::set<Key> keys;
    for (int m : ms)
      for (auto& k : shell_keys(set, m, opt)) keys.insert(std::move(k));
    size += static_cast<unsigned long>(keys.size());
  }
  return size;
}

VerifyReport verify(const CubatureFormula& formula, int t, const DefectOptions& opt) {
  VerifyReport rep;
  Integer carried = 0, declared = 0;
  for (const auto& node : formula.nodes) carried += static_cast<unsigned long>(node.shells.size());
  for (const auto& g : formula.shells) declared += g.count;
  if (!formula.shells.empty() && carried != declared) {
    rep.message = "node count mismatch: shells hold " + declared.get_str() + " vectors, nodes carry " + carried.get_str();
    return rep;
  }
  if (formula.exact()) {
    Rational total = 0;
    for (const auto& node : formula.nodes) total += *node.exact_weight;
    if (total != 1) {
      rep.message = "exact weights sum to " + to_string(total);
      return rep;
    }
  }
  try {
    rep.strength = strength_check(formula.node_set(), t, opt);
  } catch (const PairCapExceeded& e) {
    rep.message = std::string("verification refused: ") + e.what();
    return rep;
  }
  rep.ran = true;
  rep.pass = rep.strength->pass;
  rep.message = rep.pass ? "strength " + std::to_string(t) + " verified"
                         : "fails at degree " + std::to_string(rep.strength->first_failing.value_or(0));
  return rep;
}

namespace {

void exponents(int n, int degree, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur.push_back(e);
    exponents(n, degree - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ReduceReport reduce_support(const CubatureFormula& formula, int t, const DefectOptions& opt) {
  ReduceReport rep;
  rep.formula = formula;
  const int n = static_cast<int>(formula.n);
  const Integer bound = bound_B(n, t);
  rep.bound = bound.fits_ulong_p() ? bound.get_ui() : 0;
  std::vector<std::vector<int>> monos;
  {
    std::vector<int> cur;
    exponents(n, t, cur, monos);
    if (t >= 1) exponents(n, t - 1, cur, monos);
  }
  const std::size_t rows = monos.size();
  const std::size_t nodes = formula.size();
  if (static_cast<double>(rows) * static_cast<double>(std::min<std::size_t>(nodes, rows + 1)) > 5e7) {
    rep.message = "moment matrix too large to reduce";
    return rep;
  }
  auto column = [&](std::size_t i) {
    Eigen::VectorXd col(rows);
    const auto& x = formula.nodes[i].x;
    for (std::size_t r = 0; r < rows; ++r) {
      double v = 1;
      for (int k = 0; k < n; ++k)
        for (int e = 0; e < monos[r][k]; ++e) v *= x[k];
      col(r) = v;
    }
    return col;
  };
  std::vector<std::size_t> active(nodes);
  std::iota(active.begin(), active.end(), 0);
  std::vector<double> w(nodes);
  for (std::size_t i = 0; i < nodes; ++i) w[i] = formula.nodes[i].weight;
  for (;;) {
    const std::size_t take = std::min(active.size(), rows + 1);
    Eigen::MatrixXd m(rows, take);
    for (std::size_t c = 0; c < take; ++c) m.col(c) = column(active[c]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * smax) ++rank;
    if (rank == static_cast<Eigen::Index>(take)) break;
    Eigen::VectorXd z = svd.matrixV().col(take - 1);
    if (z.maxCoeff() <= 0) z = -z;
    double alpha = kInfinity;
    std::size_t drop = take;
    for (std::size_t c = 0; c < take; ++c)
      if (z(c) > 1e-14 && w[active[c]] / z(c) < alpha) {
        alpha = w[active[c]] / z(c);
        drop = c;
      }
    if (drop == take) break;
    for (std::size_t c = 0; c < take; ++c) w[active[c]] -= alpha * z(c);
    w[active[drop]] = 0;
    std::vector<std::size_t> next;
    for (auto i : active)
      if (w[i] > 0) next.push_back(i);
    active.swap(next);
    rep.reduced = true;
  }
  if (!rep.reduced) {
    rep.message = "moment matrix has full column rank; formula unchanged";
    return rep;
  }
  CubatureFormula out;
  out.n = formula.n;
  out.t = formula.t;
  out.set_id = formula.set_id + " reduced";
  out.frame = formula.frame;
  double total = 0;
  for (auto i : active) total += w[i];
  for (auto i : active) {
    CubatureNode node = formula.nodes[i];
    node.weight = w[i] / total;
    node.exact_weight.reset();
    node.shells.clear();
    out.nodes.push_back(std::move(node));
  }
  auto check = verify(out, t, opt);
  if (!check.ran || !check.pass || out.size() > rep.bound) {
    rep.reduced = false;
    rep.message = "reduced formula failed re-verification (" + check.message + "); original returned";
    return rep;
  }
  rep.verified = true;
  rep.message = "reduced from " + std::to_string(formula.size()) + " to " + std::to_string(out.size()) + " nodes";
  rep.formula = std::move(out);
  return rep;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string shells_string(const CubatureFormula& f) {
  std::string s;
  for (const auto& g : f.shells) s += (s.empty() ? "" : ";") + std::to_string(g.norm) + ":" + to_string(g.weight);
  return s;
}

}  // namespace

void write_csv(std::ostream& out, const CubatureFormula& f) {
  out << "# n=" << f.n << "\n# t=" << f.t << "\n# size=" << f.size() << "\n# set=" << f.set_id
      << "\n# frame=" << f.frame << "\n# shells=" << shells_string(f) << "\n";
  out << "index";
  for (std::size_t k = 0; k < f.n; ++k) out << ",x" << k + 1;
  out << ",weight,weight_exact,exact\n";
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& node = f.nodes[i];
    out << i;
    for (double v : node.x) out << "," << decimal17(v);
    out << "," << decimal17(node.weight) << "," << (node.exact_weight ? to_string(*node.exact_weight) : "") << ","
        << csv_field(node.exact) << "\n";
  }
}

void write_jsonl(std::ostream& out, const CubatureFormula& f) {
  nlohmann::ordered_json header;
  header["record"] = "header";
  header["n"] = f.n;
  header["t"] = f.t;
  header["size"] = f.size();
  header["set"] = f.set_id;
  header["frame"] = f.frame;
  header["shells"] = nlohmann::ordered_json::array();
  for (const auto& g : f.shells)
    header["shells"].push_back({{"norm", g.norm},
                                {"count", g.count.get_str()},
                                {"weight_exact", to_string(g.weight)},
                                {"weight", to_decimal(g.weight, 17)}});
  out << header.dump() << "\n";
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& node = f.nodes[i];
    nlohmann::ordered_json rec;
    rec["record"] = "node";
    rec["index"] = i;
    rec["x"] = nlohmann::ordered_json::array();
    for (double v : node.x) rec["x"].push_back(decimal17(v));
    rec["weight"] = decimal17(node.weight);
    if (node.exact_weight) rec["weight_exact"] = to_string(*node.exact_weight);
    if (!node.exact.empty()) rec["exact"] = node.exact;
    out << rec.dump() << "\n";
  }
}

CubatureFormula read_csv(std::istream& in) {
  CubatureFormula f;
  std::string line;
  bool header = false;
  auto fields = [](const std::string& l) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < l.size(); ++i) {
      const char c = l[i];
      if (quoted) {
        if (c == '"' && i + 1 < l.size() && l[i + 1] == '"') {
          out.back() += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          out.back() += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        out.emplace_back();
      } else if (c != '\r') {
        out.back() += c;
      }
    }
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "n") f.n = std::stoul(value);
      if (key == "t") f.t = std::stoi(value);
      if (key == "set") f.set_id = value;
      if (key == "frame") f.frame = value;
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    auto v = fields(line);
    if (f.n == 0 || v.size() != f.n + 4) throw CubatureError("read_csv: malformed row '" + line + "'");
    CubatureNode node;
    for (std::size_t k = 0; k < f.n; ++k) node.x.push_back(std::stod(v[1 + k]));
    node.weight = std::stod(v[1 + f.n]);
    if (!v[2 + f.n].empty()) node.exact_weight = parse_rational(v[2 + f.n]);
    node.exact = v[3 + f.n];
    f.nodes.push_back(std::move(node));
  }
  if (!header) throw CubatureError("read_csv: no column header");
  return f;
}

}  // namespace latcub
