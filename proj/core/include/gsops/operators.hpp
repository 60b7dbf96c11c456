#pragma once

// Floating-point U_n, Ut_n (the modified operator) and D = phi(x) d^2/dx^2.
// Every result is a polynomial kept in Bernstein form, so D can be applied to
// operator outputs as a coefficient map rather than by differencing samples.

#include <string>
#include <string_view>
#include <vector>

#include "gsops/function_spec.hpp"

namespace gsops {

class BernsteinForm {
 public:
  BernsteinForm() : BernsteinForm(0, {0.0}) {}
  BernsteinForm(int n, std::vector<double> coeffs);

  static BernsteinForm zero(int n);
  /// Unit coefficient vector e_k: the basis polynomial P_{n,k}.
  static BernsteinForm unit(int n, int k);

  int degree() const { return n_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// de Casteljau evaluation; x outside [0,1] is a DomainError.
  double operator()(double x) const;

  /// Same polynomial in the degree-m basis, m >= degree().
  BernsteinForm raised_to(int m) const;

  BernsteinForm& operator+=(const BernsteinForm& o);
  BernsteinForm& operator-=(const BernsteinForm& o);
  BernsteinForm& operator*=(double s);

  friend BernsteinForm operator+(BernsteinForm a, const BernsteinForm& b) { return a += b; }
  friend BernsteinForm operator-(BernsteinForm a, const BernsteinForm& b) { return a -= b; }
  friend BernsteinForm operator*(BernsteinForm a, double s) { return a *= s; }
  friend BernsteinForm operator*(double s, BernsteinForm a) { return a *= s; }

  /// {"degree": n, "coeffs": [...]}
  std::string to_json() const;
  static BernsteinForm from_json(std::string_view text);

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// D on Bernstein coefficients: (D c)_j = j(n-j)(c_{j-1} - 2 c_j + c_{j+1}).
/// Degree is preserved; forms of degree <= 1 map to zero.
BernsteinForm dtilde_form(const BernsteinForm& p);

/// U_n f. Polynomial catalog entries go through the exact rational path.
BernsteinForm apply_U(const FunctionSpec& f, int n, double tol);
/// U_n p for a polynomial operand (exact-degree Gauss rule, no refinement).
BernsteinForm apply_U(const BernsteinForm& p, int n);

/// Ut_n f = U_n f - D U_n f / n.
BernsteinForm apply_Utilde(const FunctionSpec& f, int n, double tol);
BernsteinForm apply_Utilde(const BernsteinForm& p, int n);

/// Ut_n applied `times` times; the operand is polynomial after the first pass.
BernsteinForm iterate_Utilde(const FunctionSpec& f, int n, int times, double tol);

inline constexpr double kDefaultTol = 1e-12;

}  // namespace gsops
