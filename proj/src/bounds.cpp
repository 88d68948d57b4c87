#include "latcub/bounds.hpp"

#include "latcub/gegenbauer.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace latcub {

Integer delsarte(int n, int t) {
  if (n < 2 || t < 0) throw std::invalid_argument("delsarte: need n >= 2 and t >= 0");
  const int s = t / 2;
  if (t % 2 == 0) return binomial(n + s - 1, n - 1) + binomial(n + s - 2, n - 1);
  return 2 * binomial(n + s - 1, n - 1);
}

bool delsarte_flagged(int n, int t) {
  // the "(D)" rows of Tables 4 to 12
  static const std::set<std::pair<int, int>> flagged = {
      {4, 5},  {12, 5}, {12, 7}, {14, 5}, {14, 7}, {16, 7}, {16, 9},
      {20, 5}, {20, 7}, {20, 9}, {23, 9}, {24, 5}, {24, 7},
  };
  return flagged.count({n, t}) > 0;
}

Integer delsarte_plus_one(int n, int t) { return delsarte(n, t) + (delsarte_flagged(n, t) ? 1 : 0); }

Integer bound_B(int n, int t) {
  if (n < 1 || t < 0) throw std::invalid_argument("bound_B: need n >= 1 and t >= 0");
  return binomial(n + t - 1, n - 1) + binomial(n + t - 2, n - 1);
}

YudinResult yudin(int n, int t) {
  if (n < 3 || t < 1) throw BoundError("yudin: need n >= 3 and t >= 1");
  // Q_{t+1}' is proportional to the degree-t polynomial of dimension n + 2
  const Gegenbauer deriv(n + 2);
  auto f = [&](double u) { return deriv.value(t, u); };
  const double step = 1e-4;
  double hi = 1.0, f_hi = f(hi);
  if (f_hi == 0) throw BoundError("yudin: root at 1");
  double lo = hi - step;
  while (lo > -1.0 && (f(lo) > 0) == (f_hi > 0)) {
    hi = lo;
    lo -= step;
  }
  if (lo <= -1.0) throw BoundError("yudin: largest root not bracketed");
  const bool sign_hi = f(hi) > 0;
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0) == sign_hi)
      hi = mid;
    else
      lo = mid;
  }
  const double gamma = 0.5 * (lo + hi);
  const double e = 0.5 * (n - 3);
  auto w = [e](double u) { return std::pow(std::max(0.0, 1 - u * u), e); };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err_total = 0, err_tail = 0, l1 = 0;
  const double total = integrator.integrate(w, -1.0, 1.0, 1e-10, &err_total, &l1);
  const double tail = integrator.integrate(w, gamma, 1.0, 1e-10, &err_tail, &l1);
  YudinResult r;
  r.gamma = gamma;
  r.value = total / tail;
  r.error = r.value * (std::fabs(err_total / total) + std::fabs(err_tail / tail));
  return r;
}

namespace {

// Dense tableau; row `m` holds the reduced costs of the current objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return a_[i * (n_ + 1) + n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0) continue;
      double* row = &at(i, 0);
      const double* prow = &at(r, 0);
      for (std::size_t j = 0; j <= n_; ++j) row[j] -= f * prow[j];
      row[c] = 0;
    }
    if (r < m_) basis_[r] = c;
  }

  // Sets the cost row for maximizing c.x over the current basis.
  void set_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) at(m_, j) = j < n_ ? -c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(m_, j) += cb * at(i, j);
    }
  }

  // Largest-coefficient rule, switching to Bland's rule while pivots are degenerate.
  LpStatus optimize(const std::vector<bool>& allowed, std::size_t max_iterations, std::size_t& iterations) {
    const double eps = 1e-10;
    std::size_t degenerate_run = 0;
    for (;;) {
      if (iterations >= max_iterations) return LpStatus::iteration_limit;
      const bool bland = degenerate_run > 20;
      std::size_t enter = n_;
      double best = -eps;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!allowed[j]) continue;
        const double d = at(m_, j);
        if (d < -eps) {
          if (bland) {
            enter = j;
            break;
          }
          if (d < best) {
            best = d;
            enter = j;
          }
        }
      }
      if (enter == n_) return LpStatus::optimal;
      std::size_t leave = m_;
      double ratio = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = at(i, enter);
        if (v <= eps) continue;
        const double q = rhs(i) / v;
        if (leave == m_ || q < ratio - 1e-12 || (std::fabs(q - ratio) <= 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          ratio = q;
        }
      }
      if (leave == m_) return LpStatus::unbounded;
      degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iterations;
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

struct ColumnMap {
  std::size_t var;
  double sign;
};

}  // namespace

LpResult lp_solve(const std::vector<double>& c, const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& lower, const std::vector<double>& upper, std::size_t max_iterations) {
  const std::size_t nv = c.size();
  if (lower.size() != nv || upper.size() != nv || a.size() != b.size())
    throw std::invalid_argument("lp_solve: inconsistent dimensions");
  for (const auto& row : a)
    if (row.size() != nv) throw std::invalid_argument("lp_solve: constraint row of the wrong length");

  // x_i = offset_i + sum sign * y over the columns of variable i
  std::vector<double> offset(nv, 0.0);
  std::vector<ColumnMap> cols;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < nv; ++i) {
    const bool lo = std::isfinite(lower[i]), hi = std::isfinite(upper[i]);
    if (lo && hi && lower[i] > upper[i]) return LpResult{LpStatus::infeasible, {}, 0, 0, 0};
    if (lo) {
      offset[i] = lower[i];
      cols.push_back({i, 1.0});
    } else if (hi) {
      offset[i] = upper[i];
      cols.push_back({i, -1.0});
    } else {
      cols.push_back({i, 1.0});
      cols.push_back({i, -1.0});
    }
  }
  const std::size_t ny = cols.size();
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<double> row(ny);
    double shift = 0;
    for (std::size_t j = 0; j < ny; ++j) row[j] = a[r][cols[j].var] * cols[j].sign;
    for (std::size_t i = 0; i < nv; ++i) shift += a[r][i] * offset[i];
    rows.push_back(std::move(row));
    rhs.push_back(b[r] - shift);
  }
  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t i = cols[j].var;
    if (std::isfinite(lower[i]) && std::isfinite(upper[i])) {
      std::vector<double> row(ny, 0.0);
      row[j] = 1.0;
      rows.push_back(std::move(row));
      rhs.push_back(upper[i] - lower[i]);
    }
  }
  const std::size_t m = rows.size();
  std::vector<std::size_t> artificial_rows;
  for (std::size_t r = 0; r < m; ++r)
    if (rhs[r] < 0) artificial_rows.push_back(r);
  const std::size_t na = artificial_rows.size();
  const std::size_t ncols = ny + m + na;
  Tableau tab(m, ncols);
  for (std::size_t r = 0, k = 0; r < m; ++r) {
    const double s = rhs[r] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < ny; ++j) tab.at(r, j) = s * rows[r][j];
    tab.at(r, ny + r) = s;
    tab.rhs(r) = s * rhs[r];
    if (rhs[r] < 0) {
      tab.at(r, ny + m + k) = 1.0;
      tab.basis()[r] = ny + m + k;
      ++k;
    } else {
      tab.basis()[r] = ny + r;
    }
  }
  LpResult result;
  std::vector<bool> allowed(ncols, true);
  if (na > 0) {
    std::vector<double> phase1(ncols, 0.0);
    for (std::size_t k = 0; k < na; ++k) phase1[ny + m + k] = -1.0;
    tab.set_objective(phase1);
    auto st = tab.optimize(allowed, max_iterations, result.iterations);
    if (st == LpStatus::iteration_limit) {
      result.status = st;
      return result;
    }
    double infeas = 0;
    for (std::size_t r = 0; r < m; ++r)
      if (tab.basis()[r] >= ny + m) infeas += tab.rhs(r);
    if (infeas > 1e-9) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // drive remaining artificials out of the basis
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis()[r] < ny + m) continue;
      for (std::size_t j = 0; j < ny + m; ++j)
        if (std::fabs(tab.at(r, j)) > 1e-9) {
          tab.pivot(r, j);
          break;
        }
    }
    for (std::size_t k = 0; k < na; ++k) allowed[ny + m + k] = false;
  }
  std::vector<double> cost(ncols, 0.0);
  for (std::size_t j = 0; j < ny; ++j) cost[j] = c[cols[j].var] * cols[j].sign;
  tab.set_objective(cost);
  result.status = tab.optimize(allowed, max_iterations, result.iterations);
  if (result.status != LpStatus::optimal) return result;

  std::vector<double> y(ncols, 0.0);
  for (std::size_t r = 0; r < m; ++r) y[tab.basis()[r]] = tab.rhs(r);
  result.x = offset;
  for (std::size_t j = 0; j < ny; ++j) result.x[cols[j].var] += cols[j].sign * y[j];
  result.objective = 0;
  for (std::size_t i = 0; i < nv; ++i) result.objective += c[i] * result.x[i];
  double viol = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    double s = 0;
    for (std::size_t i = 0; i < nv; ++i) s += a[r][i] * result.x[i];
    viol = std::max(viol, s - b[r]);
  }
  for (std::size_t i = 0; i < nv; ++i) viol = std::max({viol, lower[i] - result.x[i], result.x[i] - upper[i]});
  result.max_violation = std::max(0.0, viol);
  if (result.max_violation > 1e-9) throw BoundError("lp_solve: solution violates the constraints by " +
                                                    std::to_string(result.max_violation));
  return result;
}

namespace {

// P_{2k}(u) = Q_{2k}(u) / Q_{2k}(1) for k = 0..d
void normalized_even_values(const Gegenbauer& g, int d, double u, const std::vector<double>& q1, std::vector<double>& buf,
                            std::vector<double>& out) {
  g.values(2 * d, u, buf.data());
  for (int k = 0; k <= d; ++k) out[k] = buf[2 * k] / q1[2 * k];
}

}  // namespace

double even_gegenbauer_value(int n, const std::vector<double>& coefficients, double u) {
  const Gegenbauer g(n);
  const int d = static_cast<int>(coefficients.size());
  std::vector<double> q(2 * d + 1);
  g.values(2 * d, u, q.data());
  double s = 1;
  for (int k = 1; k <= d; ++k) s += coefficients[k - 1] * q[2 * k];
  return s;
}

BoundResult lp_estimate(int n, int t, int d, int grid) {
  if (t % 2 == 0) throw BoundError("lp_estimate: t must be odd");
  const int s = (t - 1) / 2;
  if (d < s) throw BoundError("lp_estimate: need d >= (t-1)/2");
  if (grid < 100) throw BoundError("lp_estimate: need N >= 100");
  if (n < 2) throw BoundError("lp_estimate: need n >= 2");
  const Gegenbauer g(n);
  std::vector<double> q1(2 * d + 1), buf(2 * d + 1), p(d + 1);
  g.values(2 * d, 1.0, q1.data());

  // variables g_k = F_k Q_{2k}(1), k = 1..d
  std::vector<double> c(d, 1.0), lower(d, -kInfinity), upper(d, kInfinity);
  for (int k = 1; k <= d; ++k)
    if (2 * k > t) upper[k - 1] = 0.0;
  // P_{2k}(i/N) for every grid point
  std::vector<double> table(static_cast<std::size_t>(grid + 1) * (d + 1));
  for (int i = 0; i <= grid; ++i) {
    normalized_even_values(g, d, static_cast<double>(i) / grid, q1, buf, p);
    std::copy(p.begin(), p.end(), table.begin() + static_cast<std::ptrdiff_t>(i) * (d + 1));
  }
  auto value_at = [&](int i, const std::vector<double>& x) {
    const double* row = table.data() + static_cast<std::size_t>(i) * (d + 1);
    double v = 1;
    for (int k = 1; k <= d; ++k) v += x[k - 1] * row[k];
    return v;
  };

  // Cutting planes over A = {i/N}: solve on a subset, add the most violated
  // local minima, stop when no grid point is violated.
  std::set<int> active;
  const int coarse = std::max(1, grid / 256);
  for (int i = 0; i <= grid; i += coarse) active.insert(i);
  active.insert(grid);
  LpResult lp;
  std::size_t iterations = 0;
  for (int round = 0;; ++round) {
    if (round > 500) throw BoundError("lp_estimate: cutting planes did not converge");
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i : active) {
      const double* row = table.data() + static_cast<std::size_t>(i) * (d + 1);
      std::vector<double> r(d);
      for (int k = 1; k <= d; ++k) r[k - 1] = -row[k];
      a.push_back(std::move(r));
      b.push_back(1.0);
    }
    lp = lp_solve(c, a, b, lower, upper);
    iterations += lp.iterations;
    if (lp.status != LpStatus::optimal) throw BoundError("lp_estimate: linear program did not reach an optimum");
    std::vector<std::pair<double, int>> cuts;
    double prev = value_at(0, lp.x), cur = prev;
    for (int i = 0; i <= grid; ++i) {
      const double next = i < grid ? value_at(i + 1, lp.x) : kInfinity;
      if (cur < -1e-10 && cur <= prev && cur <= next && !active.count(i)) cuts.emplace_back(cur, i);
      prev = cur;
      cur = next;
    }
    if (cuts.empty()) break;
    std::sort(cuts.begin(), cuts.end());
    if (cuts.size() > 64) cuts.resize(64);
    for (const auto& [v, i] : cuts) active.insert(i);
  }
  lp.iterations = iterations;

  LpCertificate cert;
  cert.degree = d;
  cert.grid = grid;
  cert.verify_grid = 10 * grid;
  cert.lp_iterations = lp.iterations;
  cert.active_points = active.size();
  cert.g_at_one = 1;
  for (int k = 1; k <= d; ++k) {
    cert.coefficients.push_back(lp.x[k - 1] / q1[2 * k]);
    cert.g_at_one += lp.x[k - 1];
  }
  double min_value = kInfinity;
  for (int i = 0; i <= cert.verify_grid; ++i) {
    normalized_even_values(g, d, static_cast<double>(i) / cert.verify_grid, q1, buf, p);
    double v = 1;
    for (int k = 1; k <= d; ++k) v += lp.x[k - 1] * p[k];
    min_value = std::min(min_value, v);
  }
  cert.epsilon = std::max(0.0, -min_value);
  if (cert.epsilon > 0.5)
    throw BoundError("lp_estimate: epsilon = " + std::to_string(cert.epsilon) + " exceeds 0.5; refine the grid");

  BoundResult r;
  r.n = n;
  r.t = t;
  r.method = "lp_estimate";
  r.value = 2 * (cert.g_at_one + cert.epsilon) / (1 + cert.epsilon);
  r.lp = std::move(cert);
  return r;
}

}  // namespace latcub
