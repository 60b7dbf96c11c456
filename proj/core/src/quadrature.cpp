#include "gsops/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gsops/basis.hpp"
#include "gsops/errors.hpp"

namespace gsops {

namespace {

constexpr int kMaxRuleSize = 512;
constexpr int kMaxNewton = 100;
constexpr double kNewtonTol = 1e-15;
constexpr int kMaxPanels = 1 << 10;

// Legendre P_m(x) and P'_m(x) by the three-term recurrence.
std::pair<double, double> legendre(int m, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int j = 2; j <= m; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  if (m == 0) return {1.0, 0.0};
  const double dp = m * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

std::vector<double> interior_u(const FunctionSpec& f, int n, const QuadratureRule& rule,
                               int panels) {
  std::vector<double> acc(static_cast<std::size_t>(n) + 1, 0.0);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < rule.m; ++i) {
      const double t = (p + rule.nodes[i]) * h;
      const double fv = f.eval(t);
      if (!std::isfinite(fv)) {
        throw IntegrationError("u_coefficients_numeric: " + f.id() + " is not finite at t = " +
                               std::to_string(t));
      }
      const double w = rule.weights[i] * h * fv;
      const BasisVector b = bernstein_vector(n - 2, t);
      for (int k = 1; k <= n - 1; ++k) acc[k] += w * b.values[k - 1];
    }
  }
  for (auto& a : acc) a *= (n - 1);
  return acc;
}

}  // namespace

QuadratureRule gauss_legendre(int m) {
  if (m < 1 || m > kMaxRuleSize) {
    throw DomainError("gauss_legendre: m must be in [1, 512], got " + std::to_string(m));
  }
  QuadratureRule rule;
  rule.m = m;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);

  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Roots in (0,1) in decreasing order; Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [p, dp] = legendre(m, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < kNewtonTol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw IntegrationError("gauss_legendre: Newton did not converge for m = " +
                             std::to_string(m));
    }
    if (2 * i + 1 == m) x = 0.0;  // middle node of an odd rule
    const auto [p, dp] = legendre(m, x);
    (void)p;
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[m - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule, int panels) {
  if (panels < 1) throw DomainError("integrate: panels must be >= 1");
  const double h = 1.0 / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double part = 0.0;
    for (int i = 0; i < rule.m; ++i) {
      const double t = (p + rule.nodes[i]) * h;
      const double v = f(t);
      if (!std::isfinite(v)) {
        throw IntegrationError("integrate: non-finite integrand at t = " + std::to_string(t));
      }
      part += rule.weights[i] * v;
    }
    total += part * h;
  }
  return total;
}

int u_rule_size(int n, std::optional<int> polynomial_degree) {
  const int d = polynomial_degree.value_or(0);
  const int m = std::max((n + d + 1) / 2 + 4, 24);
  return std::min(m, kMaxRuleSize);
}

std::vector<double> u_coefficients_numeric(const FunctionSpec& f, int n, double target_tol) {
  if (n < 1) throw DomainError("u_coefficients_numeric: n must be >= 1");
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  u[0] = f.eval(0.0);
  u[n] = f.eval(1.0);
  if (n == 1) return u;

  const QuadratureRule rule = gauss_legendre(u_rule_size(n, f.polynomial_degree()));
  std::vector<double> prev = interior_u(f, n, rule, 1);
  double diff = 0.0;
  for (int panels = 2; panels <= kMaxPanels; panels *= 2) {
    std::vector<double> next = interior_u(f, n, rule, panels);
    diff = 0.0;
    for (int k = 1; k <= n - 1; ++k) diff = std::max(diff, std::abs(next[k] - prev[k]));
    prev = std::move(next);
    if (diff < target_tol) {
      for (int k = 1; k <= n - 1; ++k) u[k] = prev[k];
      return u;
    }
  }
  for (int k = 1; k <= n - 1; ++k) u[k] = prev[k];
  throw ToleranceError("u_coefficients_numeric: " + f.id() + " missed tolerance at n = " +
                           std::to_string(n),
                       u, diff);
}

}  // namespace gsops
