#include "gsops/exactpoly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "gsops/errors.hpp"
#include "json.hpp"

namespace gsops {

namespace {

Integer factorial(int n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// gmpxx does not reduce num/den given to the two-argument constructor, and
// its arithmetic assumes reduced operands.
Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Integer binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// ---------------------------------------------------------------------------
// RationalPoly

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(int power, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
  v.back() = c;
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::phi() { return RationalPoly({0, 1, -1}); }

void RationalPoly::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPoly(std::move(d));
}

Rational RationalPoly::max_abs_coeff() const {
  Rational best = 0;
  for (const auto& c : coeffs_) best = std::max(best, abs_rational(c));
  return best;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& s) {
  Rational r = s;
  r.canonicalize();
  for (auto& c : coeffs_) c *= r;
  normalize();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPoly(std::move(out));
}

std::string RationalPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i].get_str();
    if (i >= 1) os << "*x";
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

RationalPoly bernstein_basis_poly(int n, int k) {
  if (k < 0 || k > n) return {};
  // C(n,k) x^k (1-x)^{n-k} = C(n,k) sum_i C(n-k,i) (-1)^i x^{k+i}
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  const Integer bnk = binomial(n, k);
  for (int i = 0; i <= n - k; ++i) {
    Integer term = bnk * binomial(n - k, i);
    c[k + i] = (i % 2 == 0) ? Rational(term) : Rational(-term);
  }
  return RationalPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// ExactBernsteinForm

ExactBernsteinForm::ExactBernsteinForm(int n, std::vector<Rational> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (n_ < 0 || coeffs_.size() != static_cast<std::size_t>(n_) + 1) {
    throw DomainError("ExactBernsteinForm: need n + 1 coefficients");
  }
  for (auto& c : coeffs_) c.canonicalize();
}

ExactBernsteinForm ExactBernsteinForm::from_monomial(const RationalPoly& p, int n) {
  if (p.degree() > n) {
    throw DomainError("ExactBernsteinForm::from_monomial: degree " +
                      std::to_string(p.degree()) + " exceeds basis degree " +
                      std::to_string(n));
  }
  // x^j = sum_{k>=j} C(k,j)/C(n,j) P_{n,k}
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int j = 0; j <= p.degree(); ++j) {
    const Rational& pj = p.coeffs()[j];
    if (pj == 0) continue;
    const Integer bnj = binomial(n, j);
    for (int k = j; k <= n; ++k) c[k] += pj * ratio(binomial(k, j), bnj);
  }
  for (auto& q : c) q.canonicalize();
  return ExactBernsteinForm(n, std::move(c));
}

RationalPoly ExactBernsteinForm::to_monomial() const {
  RationalPoly out;
  for (int k = 0; k <= n_; ++k) {
    if (coeffs_[k] == 0) continue;
    out += coeffs_[k] * bernstein_basis_poly(n_, k);
  }
  return out;
}

ExactBernsteinForm ExactBernsteinForm::raised() const {
  // c'_k = (k/(n+1)) c_{k-1} + (1 - k/(n+1)) c_k
  const int m = n_ + 1;
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1, Rational(0));
  for (int k = 0; k <= m; ++k) {
    const Rational w = ratio(k, m);
    if (k >= 1) c[k] += w * coeffs_[k - 1];
    if (k <= n_) c[k] += (1 - w) * coeffs_[k];
  }
  return ExactBernsteinForm(m, std::move(c));
}

// ---------------------------------------------------------------------------
// Operators

Rational integrate_against_basis(int m, int j, const RationalPoly& p) {
  if (m < 0 || j < 0 || j > m) throw DomainError("integrate_against_basis: need 0 <= j <= m");
  // int_0^1 C(m,j) t^{j+i} (1-t)^{m-j} dt = C(m,j) (j+i)! (m-j)! / (m+i+1)!
  const Integer scale = binomial(m, j) * factorial(m - j);
  Rational acc = 0;
  for (int i = 0; i <= p.degree(); ++i) {
    const Rational& pi = p.coeffs()[i];
    if (pi == 0) continue;
    acc += pi * ratio(scale * factorial(j + i), factorial(m + i + 1));
  }
  acc.canonicalize();
  return acc;
}

std::vector<Rational> u_coefficients_exact(const RationalPoly& f, int n) {
  if (n < 1) throw DomainError("u_coefficients_exact: n must be >= 1");
  std::vector<Rational> u(static_cast<std::size_t>(n) + 1);
  u[0] = f(Rational(0));
  u[n] = f(Rational(1));
  for (int k = 1; k <= n - 1; ++k) u[k] = (n - 1) * integrate_against_basis(n - 2, k - 1, f);
  return u;
}

ExactBernsteinForm apply_U_exact(const RationalPoly& f, int n) {
  return ExactBernsteinForm(n, u_coefficients_exact(f, n));
}

RationalPoly dtilde_exact(const RationalPoly& p) {
  return RationalPoly::phi() * p.derivative().derivative();
}

RationalPoly dtilde_power_exact(const RationalPoly& p, int ell) {
  RationalPoly out = p;
  for (int i = 0; i < ell; ++i) out = dtilde_exact(out);
  return out;
}

ExactBernsteinForm dtilde_exact(const ExactBernsteinForm& p) {
  const int n = p.degree();
  const auto& c = p.coeffs();
  std::vector<Rational> d(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int j = 1; j <= n - 1; ++j) {
    d[j] = static_cast<long>(j) * (n - j) * (c[j - 1] - 2 * c[j] + c[j + 1]);
  }
  return ExactBernsteinForm(n, std::move(d));
}

ExactBernsteinForm apply_Utilde_exact(const RationalPoly& f, int n) {
  if (n < 1) throw DomainError("apply_Utilde_exact: n must be >= 1");
  const Rational inv_n = ratio(1, n);

  ExactBernsteinForm via_operator = apply_U_exact(f - inv_n * dtilde_exact(f), n);

  // Route through the modified basis P_{n,k} - D P_{n,k} / n.
  ExactBernsteinForm u = apply_U_exact(f, n);
  ExactBernsteinForm du = dtilde_exact(u);
  std::vector<Rational> c(u.coeffs());
  for (int k = 0; k <= n; ++k) c[k] -= inv_n * du.coeffs()[k];
  ExactBernsteinForm via_basis(n, std::move(c));

  if (!(via_operator == via_basis)) {
    throw InvariantViolation("apply_Utilde_exact: operator and basis routes disagree for f = " +
                             f.to_string() + ", n = " + std::to_string(n));
  }
  return via_basis;
}

RationalPoly U_exact(const RationalPoly& f, int n) { return apply_U_exact(f, n).to_monomial(); }

RationalPoly Utilde_exact(const RationalPoly& f, int n) {
  return apply_Utilde_exact(f, n).to_monomial();
}

CommuteReport commute_check_exact(const RationalPoly& f, int n, int m) {
  CommuteReport r;
  const RationalPoly df = dtilde_exact(f);
  r.dtilde_u = (dtilde_exact(U_exact(f, n)) - U_exact(df, n)).max_abs_coeff();
  r.dtilde_utilde = (dtilde_exact(Utilde_exact(f, n)) - Utilde_exact(df, n)).max_abs_coeff();
  r.u_utilde = (U_exact(Utilde_exact(f, n), n) - Utilde_exact(U_exact(f, n), n)).max_abs_coeff();
  r.utilde_utilde =
      (Utilde_exact(Utilde_exact(f, n), m) - Utilde_exact(Utilde_exact(f, m), n)).max_abs_coeff();
  if (!r.all_zero()) {
    throw InvariantViolation("commute_check_exact: nonzero discrepancy for f = " + f.to_string() +
                             " (n = " + std::to_string(n) + ", m = " + std::to_string(m) + ")");
  }
  return r;
}

Rational telescope_check_exact(const RationalPoly& f, int k) {
  if (k < 1) throw DomainError("telescope_check_exact: k must be >= 1");
  const Rational w = ratio(1, Integer(k) * k * (k + 1));
  const RationalPoly lhs = Utilde_exact(f, k) - Utilde_exact(f, k + 1);
  const RationalPoly rhs = -w * dtilde_exact(U_exact(dtilde_exact(f), k + 1));
  const Rational gap = (lhs - rhs).max_abs_coeff();
  if (gap != 0) {
    throw InvariantViolation("telescope_check_exact: discrepancy " + gap.get_str() +
                             " for f = " + f.to_string() + ", k = " + std::to_string(k));
  }
  return gap;
}

RationalPoly series_partial_sum(const RationalPoly& f, int n, int last) {
  if (n < 1) throw DomainError("series_partial_sum: n must be >= 1");
  const RationalPoly df = dtilde_exact(f);
  RationalPoly sum;
  for (int k = n; k <= last; ++k) {
    const Rational w = ratio(1, Integer(k) * k * (k + 1));
    sum += w * dtilde_exact(U_exact(df, k + 1));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const RationalPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  if (p.is_zero()) {
    arr.push_back("0/1");
  } else {
    for (const auto& c : p.coeffs()) arr.push_back(c.get_num().get_str() + "/" + c.get_den().get_str());
  }
  return arr.dump();
}

RationalPoly rational_poly_from_json(std::string_view text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("rational_poly_from_json: ") + e.what());
  }
  if (!arr.is_array()) throw DomainError("rational_poly_from_json: expected an array");
  std::vector<Rational> coeffs;
  coeffs.reserve(arr.size());
  for (const auto& item : arr) {
    if (!item.is_string()) throw DomainError("rational_poly_from_json: expected \"num/den\" strings");
    Rational q;
    if (q.set_str(item.get<std::string>(), 10) != 0 || q.get_den() == 0) {
      throw DomainError("rational_poly_from_json: bad rational '" + item.get<std::string>() + "'");
    }
    q.canonicalize();
    coeffs.push_back(std::move(q));
  }
  return RationalPoly(std::move(coeffs));
}

}  // namespace gsops
