#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gsops/function_spec.hpp"

namespace gsops {

/// Gauss-Legendre rule on [0,1]. Immutable once built; share freely.
struct QuadratureRule {
  int m = 0;
  std::vector<double> nodes;    // strictly increasing, in (0,1)
  std::vector<double> weights;  // positive, sum to 1

  int exactness() const { return 2 * m - 1; }
};

/// m-point rule, 1 <= m <= 512. Throws IntegrationError if Newton stalls.
QuadratureRule gauss_legendre(int m);

/// Composite rule over `panels` equal subintervals of [0,1]. The callback
/// may be invoked concurrently by callers that share it across threads.
double integrate(const std::function<double(double)>& f, const QuadratureRule& rule, int panels);

/// Node count used for the interior u_{n,k} integrals.
int u_rule_size(int n, std::optional<int> polynomial_degree);

/// u_{n,k}(f) for k = 0..n with the interior integrals refined by panel
/// doubling until successive estimates differ by less than target_tol.
std::vector<double> u_coefficients_numeric(const FunctionSpec& f, int n, double target_tol);

}  // namespace gsops
