#pragma once

#include "latcub/gegenbauer.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace latcub {

// Weighted unit vectors in R^n, coordinates row-major.
struct NodeSet {
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  const double* node(std::size_t i) const { return coords.data() + i * dim; }
};

class PairCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DefectOptions {
  double tolerance = 1e-9;            // relative
  std::size_t pair_cap = 1'000'000'000;  // ordered pairs
  unsigned threads = 0;
};

// Degree-k defect sum_{x,y} W(x) W(y) Q_k(<x,y>) with the magnitude scale
// sum |W(x) W(y) Q_k(<x,y>)| used for the relative zero test.
struct DefectReport {
  int k = 0;
  double defect = 0;
  double scale = 0;
  double error_bound = 0;
  bool zero = false;
};

struct StrengthReport {
  int target = 0;
  bool pass = false;
  std::optional<int> first_failing;  // smallest k <= target with nonzero defect
  std::optional<int> sharp_degree;   // smallest k > target with nonzero defect, among those computed
  std::vector<DefectReport> degrees;  // k = 1 .. max computed
};

// Inner-product distribution: sum over ordered node pairs of W(x)W(y) at
// each distinct value u = <x,y>.
struct InnerProductDistribution {
  std::size_t dim = 0;
  std::vector<double> u;
  std::vector<double> mass;
};

// Checks |x| = 1 and sum W = 1 within 1e-12.
void check_node_set(const NodeSet& nodes);

std::vector<DefectReport> pair_defects(const NodeSet& nodes, int max_degree, const DefectOptions& opt = {});

std::vector<DefectReport> distribution_defects(const InnerProductDistribution& dist, int max_degree,
                                               double tolerance = 1e-9);

double design_defect(const NodeSet& nodes, int k, const DefectOptions& opt = {});

// Assembles a strength report from defects for k = 1..(t + extra).
StrengthReport strength_from_defects(std::vector<DefectReport> defects, int t);

StrengthReport strength_check(const NodeSet& nodes, int t, const DefectOptions& opt = {});

}  // namespace latcub
