#pragma once

// Uniform-norm estimation and checkers for the approximation inequalities of
// the modified operator: norm bound, Jackson, Voronovskaya, Bernstein-type,
// direct and strong converse estimates through a K-functional sandwich.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsops/function_spec.hpp"
#include "gsops/operators.hpp"

namespace gsops {

inline const double kSqrt3 = std::sqrt(3.0);
/// Constant of the Bernstein-type inequality, 6.5 + sqrt(6).
inline const double kBernsteinConstant = 6.5 + std::sqrt(6.0);
/// Converse threshold factor L = 16 C / 9.
inline const double kConverseL = 16.0 * kBernsteinConstant / 9.0;
/// Converse constant 4 + sqrt(3) + C^2.
inline const double kConverseC = 4.0 + kSqrt3 + kBernsteinConstant * kBernsteinConstant;

inline constexpr int kDefaultGrid = 2001;

struct SupNormEstimate {
  double value = 0.0;
  double argmax = 0.0;
  int grid_size = 0;
  bool refined = false;
};

/// max |g| over a Chebyshev-distributed grid (endpoints included) followed
/// by 50 golden-section steps around the best grid point.
SupNormEstimate sup_norm(const std::function<double(double)>& g, int grid_size = kDefaultGrid);
SupNormEstimate sup_norm(const BernsteinForm& p, int grid_size = kDefaultGrid);

/// Grid used by sup_norm: (1 - cos(pi i / (N-1))) / 2, i = 0..N-1.
std::vector<double> chebyshev_grid(int grid_size);

class InequalityReport {
 public:
  InequalityReport() = default;
  InequalityReport(std::string name, int n, std::optional<int> ell, double lhs, double rhs)
      : name_(std::move(name)), n_(n), ell_(ell), lhs_(lhs), rhs_(rhs) {}

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  std::optional<int> ell() const { return ell_; }
  double lhs() const { return lhs_; }
  double rhs() const { return rhs_; }
  double margin() const { return rhs_ - lhs_; }
  bool pass() const { return lhs_ <= rhs_ * (1.0 + 1e-9) + 1e-12; }

 private:
  std::string name_;
  int n_ = 0;
  std::optional<int> ell_;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
};

/// Ut_n f - f as a callable on [0,1].
std::function<double(double)> utilde_error(const FunctionSpec& f, int n, double tol = kDefaultTol);
std::function<double(double)> u_error(const FunctionSpec& f, int n, double tol = kDefaultTol);

/// sum_k |1 - T_{n,k}(x)/n| P_{n,k}(x) at one point.
double lebesgue_function(int n, double x);
/// sup_x of lebesgue_function; majorizes the operator norm of Ut_n.
SupNormEstimate lebesgue_bound(int n, int grid_size = kDefaultGrid);

/// sum_k |D Pt_{n,k}(x)| with Pt_{n,k} = P_{n,k} - D P_{n,k} / n.
double bernstein_lebesgue_function(int n, double x);

/// ||Ut_n f - f|| <= ||D^2 f|| / n^2.
InequalityReport check_jackson(const FunctionSpec& f, int n, int grid_size = kDefaultGrid,
                               double tol = kDefaultTol);

/// ||Ut_n f - f + lambda(n) D^2 f|| <= theta(n) ||D^3 f||.
InequalityReport check_voronovskaya(const FunctionSpec& f, int n, int grid_size = kDefaultGrid,
                                    double tol = kDefaultTol);

/// ||D Ut_n f|| <= (6.5 + sqrt 6) n ||f||.
InequalityReport check_bernstein_inequality(const FunctionSpec& f, int n,
                                            int grid_size = kDefaultGrid,
                                            double tol = kDefaultTol);
/// Same inequality for Ut_n applied to coefficients u directly; ||f|| is
/// replaced by max |u_k|, which dominates |u_{n,k}(f)| for any admissible f.
InequalityReport check_bernstein_inequality(const std::vector<double>& u,
                                            int grid_size = kDefaultGrid);

/// ||U_n f - f|| <= ||D f|| / n.
InequalityReport check_u_contraction(const FunctionSpec& f, int n, int grid_size = kDefaultGrid,
                                     double tol = kDefaultTol);
/// ||Ut_n f - f|| <= 2 ||D f|| / n.
InequalityReport check_utilde_contraction(const FunctionSpec& f, int n,
                                          int grid_size = kDefaultGrid,
                                          double tol = kDefaultTol);

struct BnDecomposition {
  InequalityReport a_identity;   // max |a_n - 2(n-1)| <= 1e-8
  InequalityReport b_bound;      // max b_n <= 4.5 n
  InequalityReport c_bound;      // max c_n <= sqrt(6) n
  InequalityReport s_identity;   // max |S - 4(n-1)| <= 1e-8
  InequalityReport b_plateau;    // b_n = 4(n-1) off the (xi_k, k/n) windows
  InequalityReport b_midband;    // b_n = 4(n-1) on the central band

  std::vector<InequalityReport> all() const {
    return {a_identity, b_bound, c_bound, s_identity, b_plateau, b_midband};
  }
};

struct BnTerms {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double s = 0.0;
};

/// a_n, b_n, c_n and S at one interior point.
BnTerms bn_terms(int n, double x);

/// Checks the a_n/b_n/c_n bounds on the interior grid i/(N+1), i = 1..N.
BnDecomposition check_bn_decomposition(int n, int grid_size = kDefaultGrid);

struct KfSandwich {
  double t = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string candidate_id;
};

/// Certified bracket for K(f, 1/n^2). Candidates: Ut_m^3 f for each m in
/// candidate_ms, plus f itself when D^2 f is bounded.
KfSandwich kfunctional_sandwich(const FunctionSpec& f, int n, const std::vector<int>& candidate_ms,
                                int grid_size = kDefaultGrid, double tol = kDefaultTol);
std::vector<int> default_candidate_ms(int n);

/// ||Ut_n f - f|| <= (1 + sqrt 3) * sandwich.upper.
InequalityReport check_direct(const FunctionSpec& f, int n, int grid_size = kDefaultGrid,
                              double tol = kDefaultTol);

struct ConverseReport {
  InequalityReport converse;   // K upper <= C l^2/n^2 (||Ut_n f - f|| + ||Ut_l f - f||)
  InequalityReport iterate;    // ||f - Ut_n^3 f|| <= (4 + sqrt 3) ||f - Ut_n f||
  KfSandwich sandwich;
};

int converse_threshold(int n);
ConverseReport check_converse(const FunctionSpec& f, int n, int ell, int grid_size = kDefaultGrid,
                              double tol = kDefaultTol);

/// ||Ut_n f - f + sum_{k=n}^{last} D U_{k+1} D f / (k^2 (k+1))|| <= ||D^2 f|| lambda(last+1).
InequalityReport check_series_remainder(const FunctionSpec& f, int n, int last,
                                        int grid_size = kDefaultGrid);

enum class OperatorKind { U, Utilde };

struct RateRow {
  int n = 0;
  double error = 0.0;
  bool used = false;
};

struct RateFit {
  double slope = 0.0;
  std::vector<RateRow> rows;
};

/// Least-squares slope of log ||L_n f - f|| against log n. Errors below
/// 1e-13 are excluded; fewer than two usable points is a DomainError.
RateFit rate_fit(const FunctionSpec& f, const std::vector<int>& ns, OperatorKind kind,
                 int grid_size = kDefaultGrid, double tol = kDefaultTol);

}  // namespace gsops
