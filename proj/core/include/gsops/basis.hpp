#pragma once

// Bernstein basis P_{n,k}(x) = C(n,k) x^k (1-x)^{n-k} and the rational
// functions T_{n,k} with  phi(x) P''_{n,k}(x) = T_{n,k}(x) P_{n,k}(x),
// phi(x) = x(1-x).

#include <vector>

namespace gsops {

struct BasisVector {
  int n = 0;
  double x = 0.0;
  std::vector<double> values;  // values[k] = P_{n,k}(x), k = 0..n
};

/// All P_{n,k}(x), k = 0..n. Uses the triangular degree-raising recurrence
/// for n <= 1000 and log-gamma evaluation above that.
BasisVector bernstein_vector(int n, double x);

/// Single basis value; zero when k < 0 or k > n.
double bernstein_value(int n, int k, double x);

/// P'_{n,k}(x) = n [P_{n-1,k-1}(x) - P_{n-1,k}(x)].
double bernstein_derivative(int n, int k, double x);

/// T_{n,k}(x) = k(k-1)(1-x)/x - 2k(n-k) + (n-k)(n-k-1) x/(1-x).
/// Endpoints are accepted only where the singular term is absent.
double t_value(int n, int k, double x);

/// Centered-moment form n[-1 - (1-2x)/phi (k/n - x) + n/phi (k/n - x)^2].
/// Interior points only; kept as an independent algebraic route.
double t_value_centered(int n, int k, double x);

double t_prime(int n, int k, double x);
double t_double_prime(int n, int k, double x);

/// Unique zero of T'_{n,k} in ((k-1)/n, k/n) for 2 <= k <= n-2.
double xi_zero(int n, int k);

/// Closed-form central moment mu_{n,i}(x) of the Bernstein operator, i <= 4.
double moment(int n, int i, double x);

struct TailSums {
  int n = 0;
  double lambda = 0.0;  // sum_{k>=n} 1/(k^2 (k+1))
  double theta = 0.0;   // sum_{k>=n} 1/(k^2 (k+1)^2)
  double abs_err = 0.0;
};

TailSums tail_sums(int n);

/// Phi(alpha) = sum_k (alpha - T_{n,k}(x)/n)^2 P_{n,k}(x), summed directly.
double phi_big(double alpha, int n, double x);

inline double phi(double x) { return x * (1.0 - x); }

}  // namespace gsops
