#include "gsops/basis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gsops/errors.hpp"

namespace gsops {

namespace {

constexpr int kLogGammaThreshold = 1000;
constexpr double kSingularCutoff = 1e-30;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_unit_interval(double x, const char* where) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(where) + ": x = " + std::to_string(x) +
                      " outside [0,1]");
  }
}

void require_index(int n, int k, const char* where) {
  if (n < 1 || k < 0 || k > n) {
    throw DomainError(std::string(where) + ": need n >= 1 and 0 <= k <= n (n = " +
                      std::to_string(n) + ", k = " + std::to_string(k) + ")");
  }
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Coefficients of the two singular parts of T_{n,k}: k(k-1) at 0, (n-k)(n-k-1) at 1.
struct SingularParts {
  double left;
  double right;
};

SingularParts singular_parts(int n, int k, double x, const char* where) {
  require_index(n, k, where);
  require_unit_interval(x, where);
  const double left = static_cast<double>(k) * (k - 1);
  const double right = static_cast<double>(n - k) * (n - k - 1);
  if (left != 0.0 && x < kSingularCutoff) {
    throw DomainError(std::string(where) + ": singular at x = 0 for k = " +
                      std::to_string(k));
  }
  if (right != 0.0 && 1.0 - x < kSingularCutoff) {
    throw DomainError(std::string(where) + ": singular at x = 1 for n - k = " +
                      std::to_string(n - k));
  }
  return {left, right};
}

// B_2 .. B_14; psi'(x) ~ 1/x + 1/(2x^2) + sum_j B_{2j} / x^{2j+1}.
constexpr double kBernoulliEven[] = {1.0 / 6.0,    -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
                                     5.0 / 66.0,   -691.0 / 2730.0, 7.0 / 6.0};
constexpr int kAsymptoticTerms = 6;  // B_2..B_12 used, B_14 bounds the truncation
constexpr int kAsymptoticStart = 32;

}  // namespace

BasisVector bernstein_vector(int n, double x) {
  if (n < 0) throw DomainError("bernstein_vector: n must be >= 0");
  require_unit_interval(x, "bernstein_vector");

  BasisVector out;
  out.n = n;
  out.x = x;
  out.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
  auto& v = out.values;

  if (x == 0.0) {
    v.front() = 1.0;
    return out;
  }
  if (x == 1.0) {
    v.back() = 1.0;
    return out;
  }

  if (n > kLogGammaThreshold) {
    const double lx = std::log(x);
    const double l1x = std::log1p(-x);
    const double lfact_n = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
      const double lp =
          lfact_n - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lx + (n - k) * l1x;
      v[k] = std::exp(lp);
    }
    return out;
  }

  const double y = 1.0 - x;
  v[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    for (int k = j; k >= 1; --k) v[k] = y * v[k] + x * v[k - 1];
    v[0] *= y;
  }
  return out;
}

double bernstein_value(int n, int k, double x) {
  require_unit_interval(x, "bernstein_value");
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x == 1.0) return k == n ? 1.0 : 0.0;
  if (n <= 60) {
    // Exact-ish binomial keeps small-degree values at full precision.
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c * std::pow(x, k) * std::pow(1.0 - x, n - k);
  }
  return std::exp(log_binomial(n, k) + k * std::log(x) + (n - k) * std::log1p(-x));
}

double bernstein_derivative(int n, int k, double x) {
  if (n < 1) return 0.0;
  return n * (bernstein_value(n - 1, k - 1, x) - bernstein_value(n - 1, k, x));
}

double t_value(int n, int k, double x) {
  const auto [left, right] = singular_parts(n, k, x, "t_value");
  double t = -2.0 * k * (n - k);
  if (left != 0.0) t += left * (1.0 - x) / x;
  if (right != 0.0) t += right * x / (1.0 - x);
  return t;
}

double t_value_centered(int n, int k, double x) {
  require_index(n, k, "t_value_centered");
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("t_value_centered: interior points only");
  }
  const double p = phi(x);
  const double d = static_cast<double>(k) / n - x;
  return n * (-1.0 - (1.0 - 2.0 * x) / p * d + n / p * d * d);
}

double t_prime(int n, int k, double x) {
  const auto [left, right] = singular_parts(n, k, x, "t_prime");
  double t = 0.0;
  if (left != 0.0) t -= left / (x * x);
  if (right != 0.0) t += right / ((1.0 - x) * (1.0 - x));
  return t;
}

double t_double_prime(int n, int k, double x) {
  const auto [left, right] = singular_parts(n, k, x, "t_double_prime");
  double t = 0.0;
  if (left != 0.0) t += 2.0 * left / (x * x * x);
  if (right != 0.0) {
    const double y = 1.0 - x;
    t += 2.0 * right / (y * y * y);
  }
  return t;
}

double xi_zero(int n, int k) {
  if (k < 2 || k > n - 2) {
    throw DomainError("xi_zero: need 2 <= k <= n-2 (n = " + std::to_string(n) +
                      ", k = " + std::to_string(k) + ")");
  }
  const double a = std::sqrt(0.5 * k * (k - 1.0));
  const double b = std::sqrt(0.5 * (n - k) * (n - k - 1.0));
  return a / (a + b);
}

double moment(int n, int i, double x) {
  if (n < 1) throw DomainError("moment: n must be >= 1");
  require_unit_interval(x, "moment");
  const double p = phi(x);
  const double nn = n;
  switch (i) {
    case 0:
      return 1.0;
    case 1:
      return 0.0;
    case 2:
      return p / nn;
    case 3:
      return (1.0 - 2.0 * x) * p / (nn * nn);
    case 4:
      return (3.0 * (nn - 2.0) * p * p + p) / (nn * nn * nn);
    default:
      throw UnsupportedError("moment: closed forms exist only for i <= 4");
  }
}

TailSums tail_sums(int n) {
  if (n < 2) throw DomainError("tail_sums: n must be >= 2");

  // Direct part k = n .. N-1, summed from the smallest term upwards.
  const int big_n = n < kAsymptoticStart ? kAsymptoticStart : n;
  double lambda_direct = 0.0;
  double theta_direct = 0.0;
  for (int k = big_n - 1; k >= n; --k) {
    const double kk = k;
    const double a = 1.0 / (kk * kk * (kk + 1.0));
    lambda_direct += a;
    theta_direct += a / (kk + 1.0);
  }

  // Tail from N via the asymptotic expansion of the trigamma function:
  // lambda(N) = psi'(N) - 1/N,  theta(N) = psi'(N) + psi'(N+1) - 2/N.
  const double nn = big_n;
  const double inv = 1.0 / nn;
  const double inv2 = inv * inv;
  double power = inv2 * inv;  // N^{-3}
  double series = 0.0;
  for (int j = 0; j < kAsymptoticTerms; ++j) {
    series += kBernoulliEven[j] * power;
    power *= inv2;
  }
  const double truncation = std::abs(kBernoulliEven[kAsymptoticTerms]) * power;
  const double lambda_tail = 0.5 * inv2 + series;
  const double theta_tail = 2.0 * series;

  // Certificate: the telescoping majorants must bracket the tail.
  const double lam_lo = 0.5 * inv2;
  const double lam_hi = 0.5 / (nn * (nn - 1.0));
  const double theta_hi = 1.0 / (3.0 * nn * (nn * nn - 1.0));
  if (!(lambda_tail >= lam_lo && lambda_tail <= lam_hi && theta_tail > 0.0 &&
        theta_tail <= theta_hi)) {
    throw InvariantViolation("tail_sums: asymptotic tail escaped its telescoping bracket");
  }

  TailSums out;
  out.n = n;
  out.lambda = lambda_direct + lambda_tail;
  out.theta = theta_direct + theta_tail;
  const int terms = big_n - n + kAsymptoticTerms + 2;
  out.abs_err = 2.0 * truncation + (terms + 8) * 0.5 * kEps * out.lambda;
  return out;
}

double phi_big(double alpha, int n, double x) {
  if (n < 1) throw DomainError("phi_big: n must be >= 1");
  const BasisVector b = bernstein_vector(n, x);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double p = b.values[k];
    if (p == 0.0) continue;
    const double d = alpha - t_value(n, k, x) / n;
    sum += d * d * p;
  }
  return sum;
}

}  // namespace gsops
