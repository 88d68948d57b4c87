#include "latcub/designs.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <thread>

namespace latcub {

namespace {

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0, carry = 0;
  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  void add(const CompensatedSum& o) {
    add(o.sum);
    add(o.carry);
  }
  double value() const { return sum + carry; }
};

struct DegreeSums {
  std::vector<CompensatedSum> defect, scale;
  explicit DegreeSums(int k = 0) : defect(k + 1), scale(k + 1) {}
  void add(const double* q, int max_degree, double w) {
    for (int k = 1; k <= max_degree; ++k) {
      defect[k].add(w * q[k]);
      scale[k].add(std::fabs(w * q[k]));
    }
  }
};

std::vector<DefectReport> finish(const DegreeSums& s, int max_degree, std::size_t n, double tolerance) {
  std::vector<DefectReport> out;
  for (int k = 1; k <= max_degree; ++k) {
    DefectReport r;
    r.k = k;
    r.defect = s.defect[k].value();
    r.scale = s.scale[k].value();
    r.error_bound = r.scale * DBL_EPSILON * (4.0 + static_cast<double>(n) + 2.0 * k * k);
    r.zero = std::fabs(r.defect) <= tolerance * r.scale;
    out.push_back(r);
  }
  return out;
}

}  // namespace

void check_node_set(const NodeSet& nodes) {
  if (nodes.dim == 0 || nodes.coords.size() != nodes.dim * nodes.size())
    throw std::invalid_argument("node set: coordinate array has the wrong size");
  double total = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double* x = nodes.node(i);
    double s = 0;
    for (std::size_t j = 0; j < nodes.dim; ++j) s += x[j] * x[j];
    if (std::fabs(s - 1) > 1e-12) throw std::invalid_argument("node set: node " + std::to_string(i) + " is not a unit vector");
    total += nodes.weights[i];
  }
  if (std::fabs(total - 1) > 1e-12) throw std::invalid_argument("node set: weights do not sum to 1");
}

std::vector<DefectReport> pair_defects(const NodeSet& nodes, int max_degree, const DefectOptions& opt) {
  check_node_set(nodes);
  const std::size_t n = nodes.size();
  const double pairs = static_cast<double>(n) * static_cast<double>(n);
  if (pairs > static_cast<double>(opt.pair_cap))
    throw PairCapExceeded("pair sum over " + std::to_string(n) + " nodes exceeds the cap of " +
                          std::to_string(opt.pair_cap) + " pairs");
  Gegenbauer geg(static_cast<int>(nodes.dim));
  // fixed block partition keeps the summation order independent of the thread count
  const std::size_t blocks = std::min<std::size_t>(64, std::max<std::size_t>(1, n));
  std::vector<DegreeSums> partial(blocks, DegreeSums(max_degree));
  auto run_block = [&](std::size_t b) {
    std::vector<double> q(static_cast<std::size_t>(max_degree) + 1);
    DegreeSums& acc = partial[b];
    // interleaved rows balance the triangular loop
    for (std::size_t i = b; i < n; i += blocks) {
      const double* x = nodes.node(i);
      const double wi = nodes.weights[i];
      geg.values(max_degree, 1.0, q.data());
      acc.add(q.data(), max_degree, wi * wi);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double* y = nodes.node(j);
        double u = 0;
        for (std::size_t d = 0; d < nodes.dim; ++d) u += x[d] * y[d];
        u = std::clamp(u, -1.0, 1.0);
        geg.values(max_degree, u, q.data());
        acc.add(q.data(), max_degree, 2 * wi * nodes.weights[j]);
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < blocks; b += threads) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  DegreeSums total(max_degree);
  for (const auto& p : partial)
    for (int k = 1; k <= max_degree; ++k) {
      total.defect[k].add(p.defect[k]);
      total.scale[k].add(p.scale[k]);
    }
  return finish(total, max_degree, nodes.dim, opt.tolerance);
}

std::vector<DefectReport> distribution_defects(const InnerProductDistribution& dist, int max_degree,
                                               double tolerance) {
  if (dist.u.size() != dist.mass.size()) throw std::invalid_argument("distribution: size mismatch");
  Gegenbauer geg(static_cast<int>(dist.dim));
  std::vector<double> q(static_cast<std::size_t>(max_degree) + 1);
  DegreeSums total(max_degree);
  for (std::size_t i = 0; i < dist.u.size(); ++i) {
    geg.values(max_degree, std::clamp(dist.u[i], -1.0, 1.0), q.data());
    total.add(q.data(), max_degree, dist.mass[i]);
  }
  return finish(total, max_degree, dist.dim, tolerance);
}

double design_defect(const NodeSet& nodes, int k, const DefectOptions& opt) {
  if (k < 1) return 1;  // degree 0: sum of weights squared times Q_0, always 1
  return pair_defects(nodes, k, opt).back().defect;
}

StrengthReport strength_from_defects(std::vector<DefectReport> defects, int t) {
  StrengthReport r;
  r.target = t;
  r.pass = true;
  for (const auto& d : defects) {
    if (d.zero) continue;
    if (d.k <= t) {
      if (!r.first_failing) r.first_failing = d.k;
      r.pass = false;
    } else if (!r.sharp_degree) {
      r.sharp_degree = d.k;
    }
  }
  r.degrees = std::move(defects);
  return r;
}

StrengthReport strength_check(const NodeSet& nodes, int t, const DefectOptions& opt) {
  return strength_from_defects(pair_defects(nodes, t + 2, opt), t);
}

}  // namespace latcub
