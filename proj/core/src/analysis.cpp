#include "gsops/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gsops/basis.hpp"
#include "gsops/errors.hpp"

namespace gsops {

namespace {

constexpr int kGoldenIterations = 50;
constexpr double kIdentityTol = 1e-8;
constexpr double kRoundingFloor = 1e-13;

double checked_abs(const std::function<double(double)>& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    throw NonFiniteError("sup_norm: non-finite value at x = " + std::to_string(x));
  }
  return std::abs(v);
}

void require_grid(int grid_size) {
  if (grid_size < 64) throw DomainError("sup_norm: grid_size must be >= 64");
}

std::string jackson_reason(const FunctionSpec& f) {
  return f.id() + " is outside the Jackson hypotheses (needs f in W^2_0 and D f in W^2)";
}

}  // namespace

// ---------------------------------------------------------------------------
// Sup norms

std::vector<double> chebyshev_grid(int grid_size) {
  require_grid(grid_size);
  std::vector<double> xs(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    xs[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (grid_size - 1)));
  }
  xs.front() = 0.0;
  xs.back() = 1.0;
  return xs;
}

SupNormEstimate sup_norm(const std::function<double(double)>& g, int grid_size) {
  const std::vector<double> xs = chebyshev_grid(grid_size);
  SupNormEstimate est;
  est.grid_size = grid_size;
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = checked_abs(g, xs[i]);
    if (v > est.value) {
      est.value = v;
      best = i;
    }
  }
  est.argmax = xs[best];

  // Golden-section search for a local maximum of |g| around the best node.
  double lo = xs[best == 0 ? 0 : best - 1];
  double hi = xs[best + 1 == xs.size() ? best : best + 1];
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = checked_abs(g, x1);
  double f2 = checked_abs(g, x2);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (f1 > est.value) {
      est.value = f1;
      est.argmax = x1;
    }
    if (f2 > est.value) {
      est.value = f2;
      est.argmax = x2;
    }
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = checked_abs(g, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = checked_abs(g, x2);
    }
  }
  est.refined = true;
  return est;
}

SupNormEstimate sup_norm(const BernsteinForm& p, int grid_size) {
  return sup_norm([&p](double x) { return p(x); }, grid_size);
}

std::function<double(double)> utilde_error(const FunctionSpec& f, int n, double tol) {
  BernsteinForm p = apply_Utilde(f, n, tol);
  return [p = std::move(p), f](double x) { return p(x) - f.eval(x); };
}

std::function<double(double)> u_error(const FunctionSpec& f, int n, double tol) {
  BernsteinForm p = apply_U(f, n, tol);
  return [p = std::move(p), f](double x) { return p(x) - f.eval(x); };
}

// ---------------------------------------------------------------------------
// Operator-norm majorants

double lebesgue_function(int n, double x) {
  const BasisVector b = bernstein_vector(n, x);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double p = b.values[k];
    if (p == 0.0) continue;
    sum += std::abs(1.0 - t_value(n, k, x) / n) * p;
  }
  return sum;
}

SupNormEstimate lebesgue_bound(int n, int grid_size) {
  if (n < 2) throw DomainError("lebesgue_bound: n must be >= 2");
  return sup_norm([n](double x) { return lebesgue_function(n, x); }, grid_size);
}

double bernstein_lebesgue_function(int n, double x) {
  if (n < 2) throw DomainError("bernstein_lebesgue_function: n must be >= 2");
  if (!(x > 0.0 && x < 1.0)) {
    if (x == 0.0 || x == 1.0) return 0.0;  // D kills everything at the endpoints
    throw DomainError("bernstein_lebesgue_function: x outside [0,1]");
  }
  const BasisVector b = bernstein_vector(n, x);
  const BasisVector bm = bernstein_vector(n - 1, x);
  const double ph = phi(x);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double p = b.values[k];
    const double dp = n * ((k >= 1 ? bm.values[k - 1] : 0.0) - (k <= n - 1 ? bm.values[k] : 0.0));
    if (p == 0.0 && dp == 0.0) continue;
    const double t = t_value(n, k, x);
    const double term = -ph / n * t_double_prime(n, k, x) * p -
                        2.0 * ph / n * t_prime(n, k, x) * dp + (1.0 - t / n) * t * p;
    sum += std::abs(term);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Inequalities

InequalityReport check_jackson(const FunctionSpec& f, int n, int grid_size, double tol) {
  const auto& s = f.smoothness();
  if (!(s.in_w2_0 && s.dtilde_in_w2)) throw PreconditionError(jackson_reason(f));
  if (n < 1) throw DomainError("check_jackson: n must be >= 1");
  const double lhs = sup_norm(utilde_error(f, n, tol), grid_size).value;
  const double d2 = sup_norm(f.dtilde_power(2), grid_size).value;
  return {"jackson", n, std::nullopt, lhs, d2 / (static_cast<double>(n) * n)};
}

InequalityReport check_voronovskaya(const FunctionSpec& f, int n, int grid_size, double tol) {
  const auto& s = f.smoothness();
  if (!(s.in_w2_0 && s.dtilde_in_w2_0 && s.dtilde3_bounded)) {
    throw PreconditionError(f.id() +
                            " is outside the Voronovskaya hypotheses (needs f, D f in W^2_0 "
                            "and D^3 f bounded)");
  }
  const TailSums ts = tail_sums(n);
  const BernsteinForm p = apply_Utilde(f, n, tol);
  const auto d2 = f.dtilde_power(2);
  const double lambda = ts.lambda;
  const double lhs =
      sup_norm([&](double x) { return p(x) - f.eval(x) + lambda * d2(x); }, grid_size).value;
  const double d3 = sup_norm(f.dtilde_power(3), grid_size).value;
  return {"voronovskaya", n, std::nullopt, lhs, ts.theta * d3};
}

InequalityReport check_bernstein_inequality(const FunctionSpec& f, int n, int grid_size,
                                            double tol) {
  if (n < 2) throw DomainError("check_bernstein_inequality: n must be >= 2");
  const BernsteinForm d = dtilde_form(apply_Utilde(f, n, tol));
  const double lhs = sup_norm(d, grid_size).value;
  const double fnorm = sup_norm([&f](double x) { return f.eval(x); }, grid_size).value;
  return {"bernstein", n, std::nullopt, lhs, kBernsteinConstant * n * fnorm};
}

InequalityReport check_bernstein_inequality(const std::vector<double>& u, int grid_size) {
  const int n = static_cast<int>(u.size()) - 1;
  if (n < 2) throw DomainError("check_bernstein_inequality: need at least 3 coefficients");
  BernsteinForm p(n, u);
  BernsteinForm d = dtilde_form(p);
  d *= 1.0 / n;
  p -= d;
  const double lhs = sup_norm(dtilde_form(p), grid_size).value;
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::abs(v));
  return {"bernstein_probe", n, std::nullopt, lhs, kBernsteinConstant * n * umax};
}

InequalityReport check_u_contraction(const FunctionSpec& f, int n, int grid_size, double tol) {
  if (!f.smoothness().in_w2) throw PreconditionError(f.id() + " has unbounded D f");
  const double lhs = sup_norm(u_error(f, n, tol), grid_size).value;
  const double d1 = sup_norm(f.dtilde_power(1), grid_size).value;
  return {"u_contraction", n, std::nullopt, lhs, d1 / n};
}

InequalityReport check_utilde_contraction(const FunctionSpec& f, int n, int grid_size,
                                          double tol) {
  if (!f.smoothness().in_w2) throw PreconditionError(f.id() + " has unbounded D f");
  const double lhs = sup_norm(utilde_error(f, n, tol), grid_size).value;
  const double d1 = sup_norm(f.dtilde_power(1), grid_size).value;
  return {"utilde_contraction", n, std::nullopt, lhs, 2.0 * d1 / n};
}

// ---------------------------------------------------------------------------
// Decomposition of sum_k |D Pt_{n,k}|

BnTerms bn_terms(int n, double x) {
  if (n < 2) throw DomainError("bn_terms: n must be >= 2");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("bn_terms: interior points only");
  const BasisVector b = bernstein_vector(n, x);
  const BasisVector bm = bernstein_vector(n - 1, x);
  BnTerms out;
  for (int k = 0; k <= n; ++k) {
    const double p = b.values[k];
    const double dp = n * ((k >= 1 ? bm.values[k - 1] : 0.0) - (k <= n - 1 ? bm.values[k] : 0.0));
    if (p == 0.0 && dp == 0.0) continue;
    const double t = t_value(n, k, x);
    const double t1 = t_prime(n, k, x);
    out.a += std::abs(t_double_prime(n, k, x)) * p;
    out.b += std::abs(t1 * dp);
    out.s += t1 * dp;
    out.c += std::abs((1.0 - t / n) * t) * p;
  }
  const double ph = phi(x);
  out.a *= ph / n;
  out.b *= 2.0 * ph / n;
  out.s *= -2.0 * ph / n;
  return out;
}

BnDecomposition check_bn_decomposition(int n, int grid_size) {
  if (n < 2) throw DomainError("check_bn_decomposition: n must be >= 2");
  if (grid_size < 1) throw DomainError("check_bn_decomposition: empty grid");

  // Windows (xi_k, k/n) where one term of b_n flips sign, and their mirrors.
  std::vector<std::pair<double, double>> windows;
  const int kmax = (n - 1) / 2;
  for (int k = 1; k <= kmax; ++k) {
    const double xi = k == 1 ? 0.0 : xi_zero(n, k);
    windows.emplace_back(xi, static_cast<double>(k) / n);
    const double xi_m = k == 1 ? 1.0 : xi_zero(n, n - k);
    windows.emplace_back(static_cast<double>(n - k) / n, xi_m);
  }
  const auto in_window = [&](double x) {
    return std::any_of(windows.begin(), windows.end(),
                       [x](const auto& w) { return x > w.first && x < w.second; });
  };
  const double band_lo = n % 2 == 0 ? (n - 2.0) / (2.0 * n) : (n - 1.0) / (2.0 * n);
  const double band_hi = n % 2 == 0 ? (n + 2.0) / (2.0 * n) : (n + 1.0) / (2.0 * n);

  const double a_target = 2.0 * (n - 1);
  const double s_target = 4.0 * (n - 1);
  double a_dev = 0.0, b_max = 0.0, c_max = 0.0, s_dev = 0.0, plateau_dev = 0.0, band_dev = 0.0;
  for (int i = 1; i <= grid_size; ++i) {
    const double x = static_cast<double>(i) / (grid_size + 1);
    const BnTerms t = bn_terms(n, x);
    a_dev = std::max(a_dev, std::abs(t.a - a_target));
    b_max = std::max(b_max, t.b);
    c_max = std::max(c_max, t.c);
    s_dev = std::max(s_dev, std::abs(t.s - s_target));
    if (!in_window(x)) plateau_dev = std::max(plateau_dev, std::abs(t.b - s_target));
    if (x >= band_lo && x <= band_hi) band_dev = std::max(band_dev, std::abs(t.b - s_target));
  }

  BnDecomposition out;
  out.a_identity = {"bn_a_identity", n, std::nullopt, a_dev, kIdentityTol};
  out.b_bound = {"bn_b_bound", n, std::nullopt, b_max, 4.5 * n};
  out.c_bound = {"bn_c_bound", n, std::nullopt, c_max, std::sqrt(6.0) * n};
  out.s_identity = {"bn_s_identity", n, std::nullopt, s_dev, kIdentityTol};
  out.b_plateau = {"bn_b_plateau", n, std::nullopt, plateau_dev, kIdentityTol};
  out.b_midband = {"bn_b_midband", n, std::nullopt, band_dev, kIdentityTol};
  return out;
}

// ---------------------------------------------------------------------------
// K-functional sandwich and the converse estimate

std::vector<int> default_candidate_ms(int n) { return {n, 2 * n, 4 * n, 8 * n}; }

KfSandwich kfunctional_sandwich(const FunctionSpec& f, int n, const std::vector<int>& candidate_ms,
                                int grid_size, double tol) {
  if (n < 2) throw DomainError("kfunctional_sandwich: n must be >= 2");
  if (candidate_ms.empty()) throw DomainError("kfunctional_sandwich: empty candidate list");

  KfSandwich out;
  out.t = 1.0 / (static_cast<double>(n) * n);
  out.lower = sup_norm(utilde_error(f, n, tol), grid_size).value / (1.0 + kSqrt3);
  out.upper = std::numeric_limits<double>::infinity();

  const auto& s = f.smoothness();
  if (s.in_w2_0 && s.dtilde_in_w2) {
    const double value = out.t * sup_norm(f.dtilde_power(2), grid_size).value;
    out.upper = value;
    out.candidate_id = "f";
  }
  for (int m : candidate_ms) {
    if (m < 1) throw DomainError("kfunctional_sandwich: candidate m must be >= 1");
    const BernsteinForm g = iterate_Utilde(f, m, 3, tol);
    const double dist = sup_norm([&](double x) { return f.eval(x) - g(x); }, grid_size).value;
    const double smooth = sup_norm(dtilde_form(dtilde_form(g)), grid_size).value;
    const double value = dist + out.t * smooth;
    if (value < out.upper) {
      out.upper = value;
      out.candidate_id = "Ut_" + std::to_string(m) + "^3";
    }
  }
  return out;
}

InequalityReport check_direct(const FunctionSpec& f, int n, int grid_size, double tol) {
  const KfSandwich k = kfunctional_sandwich(f, n, default_candidate_ms(n), grid_size, tol);
  const double lhs = sup_norm(utilde_error(f, n, tol), grid_size).value;
  return {"direct", n, std::nullopt, lhs, (1.0 + kSqrt3) * k.upper};
}

int converse_threshold(int n) { return static_cast<int>(std::ceil(kConverseL * n)); }

ConverseReport check_converse(const FunctionSpec& f, int n, int ell, int grid_size, double tol) {
  if (n < 2) throw DomainError("check_converse: n must be >= 2");
  const int need = converse_threshold(n);
  if (ell < need) {
    throw PreconditionError("check_converse: ell = " + std::to_string(ell) +
                            " is below L*n = " + std::to_string(need) +
                            " (L = 16(6.5 + sqrt 6)/9 = " + std::to_string(kConverseL) + ")");
  }
  ConverseReport out;
  out.sandwich = kfunctional_sandwich(f, n, default_candidate_ms(n), grid_size, tol);
  const double err_n = sup_norm(utilde_error(f, n, tol), grid_size).value;
  const double err_l = sup_norm(utilde_error(f, ell, tol), grid_size).value;
  const double scale = static_cast<double>(ell) * ell / (static_cast<double>(n) * n);
  out.converse = {"converse", n, ell, out.sandwich.upper, kConverseC * scale * (err_n + err_l)};

  const BernsteinForm cube = iterate_Utilde(f, n, 3, tol);
  const double cube_err = sup_norm([&](double x) { return f.eval(x) - cube(x); }, grid_size).value;
  out.iterate = {"cube_iterate", n, std::nullopt, cube_err, (4.0 + kSqrt3) * err_n};
  return out;
}

InequalityReport check_series_remainder(const FunctionSpec& f, int n, int last, int grid_size) {
  const auto& s = f.smoothness();
  if (!(s.in_w2_0 && s.dtilde_in_w2)) throw PreconditionError(jackson_reason(f));
  if (n < 2 || last < n) throw DomainError("check_series_remainder: need 2 <= n <= last");

  const FunctionSpec df = dtilde_spec(f);
  BernsteinForm partial = BernsteinForm::zero(n);
  for (int k = n; k <= last; ++k) {
    const double w = 1.0 / (static_cast<double>(k) * k * (k + 1.0));
    partial += w * dtilde_form(apply_U(df, k + 1, kDefaultTol));
  }
  const BernsteinForm approx = apply_Utilde(f, n, kDefaultTol);
  const double lhs =
      sup_norm([&](double x) { return approx(x) - f.eval(x) + partial(x); }, grid_size).value;
  const double d2 = sup_norm(f.dtilde_power(2), grid_size).value;
  return {"series_remainder", n, last, lhs, d2 * tail_sums(last + 1).lambda};
}

// ---------------------------------------------------------------------------
// Rates

RateFit rate_fit(const FunctionSpec& f, const std::vector<int>& ns, OperatorKind kind,
                 int grid_size, double tol) {
  if (ns.size() < 4) throw DomainError("rate_fit: need at least four n values");
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    if (ns[i] < 1 || ns[i + 1] <= ns[i]) throw DomainError("rate_fit: n values must increase");
    // geometric: n_{i+1} / n_i constant
    if (static_cast<long long>(ns[i + 1]) * ns[0] != static_cast<long long>(ns[i]) * ns[1]) {
      throw DomainError("rate_fit: n values must form a geometric sequence");
    }
  }

  RateFit fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int used = 0;
  for (int n : ns) {
    const auto err = kind == OperatorKind::U ? u_error(f, n, tol) : utilde_error(f, n, tol);
    RateRow row;
    row.n = n;
    row.error = sup_norm(err, grid_size).value;
    row.used = row.error >= kRoundingFloor;
    if (row.used) {
      const double lx = std::log(static_cast<double>(n));
      const double ly = std::log(row.error);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++used;
    }
    fit.rows.push_back(row);
  }
  if (used < 2) {
    throw DomainError("rate_fit: fewer than two errors above the rounding floor for " + f.id());
  }
  fit.slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  return fit;
}

}  // namespace gsops
