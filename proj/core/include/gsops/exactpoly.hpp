#pragma once

// Exact rational polynomial engine. Every operation here is closed over the
// rationals, so identities between operators can be checked with ==.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace gsops {

using Rational = mpq_class;
using Integer = mpz_class;

Integer binomial(int n, int k);

/// Polynomial in the monomial basis; coeffs()[i] multiplies x^i.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(int power, const Rational& c = 1);
  /// x - x^2
  static RationalPoly phi();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  RationalPoly derivative() const;
  /// max_i |coeff_i|; zero for the zero polynomial.
  Rational max_abs_coeff() const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& s);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& s) { return a *= s; }
  friend RationalPoly operator*(const Rational& s, RationalPoly a) { return a *= s; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

/// P_{n,k} as a monomial-basis polynomial.
RationalPoly bernstein_basis_poly(int n, int k);

/// p(x) = sum_k coeffs[k] P_{n,k}(x).
class ExactBernsteinForm {
 public:
  ExactBernsteinForm(int n, std::vector<Rational> coeffs);

  /// Represent p (degree <= n) in the degree-n Bernstein basis.
  static ExactBernsteinForm from_monomial(const RationalPoly& p, int n);

  int degree() const { return n_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  RationalPoly to_monomial() const;
  ExactBernsteinForm raised() const;  // same polynomial, degree n + 1

  friend bool operator==(const ExactBernsteinForm& a, const ExactBernsteinForm& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_;
  std::vector<Rational> coeffs_;
};

/// Integral of P_{m,j}(t) p(t) over [0,1].
Rational integrate_against_basis(int m, int j, const RationalPoly& p);

/// u_{n,0} = f(0), u_{n,n} = f(1), u_{n,k} = (n-1) * int P_{n-2,k-1} f.
std::vector<Rational> u_coefficients_exact(const RationalPoly& f, int n);

ExactBernsteinForm apply_U_exact(const RationalPoly& f, int n);

/// x(1-x) p''(x).
RationalPoly dtilde_exact(const RationalPoly& p);
RationalPoly dtilde_power_exact(const RationalPoly& p, int ell);

/// The same map on Bernstein coefficients: (D c)_j = j(n-j)(c_{j-1} - 2c_j + c_{j+1}).
ExactBernsteinForm dtilde_exact(const ExactBernsteinForm& p);

/// Computed as U_n(f - D f / n) and as sum_k u_{n,k}(f) (P_{n,k} - D P_{n,k} / n);
/// throws InvariantViolation if the two routes differ.
ExactBernsteinForm apply_Utilde_exact(const RationalPoly& f, int n);

/// Monomial-basis shortcuts used when composing operators.
RationalPoly U_exact(const RationalPoly& f, int n);
RationalPoly Utilde_exact(const RationalPoly& f, int n);

struct CommuteReport {
  Rational dtilde_u;        // |D U_n f - U_n D f|
  Rational dtilde_utilde;   // |D Ut_n f - Ut_n D f|
  Rational u_utilde;        // |U_n Ut_n f - Ut_n U_n f|
  Rational utilde_utilde;   // |Ut_m Ut_n f - Ut_n Ut_m f|

  bool all_zero() const {
    return dtilde_u == 0 && dtilde_utilde == 0 && u_utilde == 0 && utilde_utilde == 0;
  }
};

/// Max-coefficient discrepancies of the four commutation identities.
/// Throws InvariantViolation when any of them is nonzero.
CommuteReport commute_check_exact(const RationalPoly& f, int n, int m);

/// Discrepancy of  Ut_k f - Ut_{k+1} f = -D U_{k+1} D f / (k^2 (k+1)).
/// Throws InvariantViolation when nonzero.
Rational telescope_check_exact(const RationalPoly& f, int k);

/// sum_{k=n}^{last} D U_{k+1} D f / (k^2 (k+1)); Ut_n f - f is minus the
/// infinite series.
RationalPoly series_partial_sum(const RationalPoly& f, int n, int last);

/// JSON array of "num/den" strings, lowest power first.
std::string to_json(const RationalPoly& p);
RationalPoly rational_poly_from_json(std::string_view text);

}  // namespace gsops
