#pragma once

#include "latcub/rational.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcub {

class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fisher-type bound: C(n+s-1, n-1) + C(n+s-2, n-1) for t = 2s and
// 2 C(n+s-1, n-1) for t = 2s+1.
Integer delsarte(int n, int t);

// True when tight designs with parameters (n, t) are known not to exist and
// the tables quote the Delsarte value plus one.
bool delsarte_flagged(int n, int t);

// delsarte(n, t) + 1 for flagged pairs, delsarte(n, t) otherwise.
Integer delsarte_plus_one(int n, int t);

// B(n,t) = C(n+t-1, n-1) + C(n+t-2, n-1) = dim Pol_t(S^{n-1}).
Integer bound_B(int n, int t);

struct YudinResult {
  double value = 0;
  double gamma = 0;  // largest root of Q_{t+1}'
  double error = 0;  // propagated quadrature error estimate
};

YudinResult yudin(int n, int t);

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0;
  std::size_t iterations = 0;
  double max_violation = 0;  // of A x <= b and the bounds at the returned point
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Dense two-phase simplex with Bland's rule:
// maximize c.x subject to A x <= b and lower <= x <= upper (entries may be infinite).
LpResult lp_solve(const std::vector<double>& c, const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& lower, const std::vector<double>& upper,
                  std::size_t max_iterations = 200000);

struct LpCertificate {
  int degree = 0;                    // d: the polynomial has degree 2d
  int grid = 0;                      // N
  int verify_grid = 0;               // 10 N
  std::vector<double> coefficients;  // G_k, coefficient of Q_{2k}, k = 1..d (G_0 = 1)
  double g_at_one = 0;               // G(1)
  double epsilon = 0;                // -min G on the verification grid, clamped at 0
  std::size_t lp_iterations = 0;
  std::size_t active_points = 0;     // grid points carried by the final cutting-plane LP
};

struct BoundResult {
  int n = 0;
  int t = 0;
  std::string method;  // delsarte, delsarte_plus_one, B, yudin, lp_estimate
  double value = 0;
  std::optional<Integer> exact;
  std::optional<LpCertificate> lp;
  std::optional<double> gamma;
  double error = 0;
};

// Linear programming estimate for odd t over even polynomials
// F = 1 + sum_{k=1..d} F_k Q_{2k}, F >= 0 on {i/N}, F_k <= 0 for 2k > t.
// The maximizer G is lifted by epsilon = -min G on a grid of 10N points and
// the certified value is 2 (G(1) + epsilon) / (1 + epsilon). The grid LP is
// solved by cutting planes, so large N is cheap.
BoundResult lp_estimate(int n, int t, int d, int grid = 2000);

// Value of the even polynomial 1 + sum_k c_k Q_{2k}(u).
double even_gegenbauer_value(int n, const std::vector<double>& coefficients, double u);

}  // namespace latcub
