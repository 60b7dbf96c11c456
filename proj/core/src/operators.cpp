#include "gsops/operators.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "gsops/basis.hpp"
#include "gsops/errors.hpp"
#include "gsops/exactpoly.hpp"
#include "gsops/quadrature.hpp"
#include "json.hpp"

namespace gsops {

BernsteinForm::BernsteinForm(int n, std::vector<double> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (n_ < 0 || coeffs_.size() != static_cast<std::size_t>(n_) + 1) {
    throw DomainError("BernsteinForm: need degree >= 0 and degree + 1 coefficients");
  }
}

BernsteinForm BernsteinForm::zero(int n) {
  return BernsteinForm(n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
}

BernsteinForm BernsteinForm::unit(int n, int k) {
  BernsteinForm e = zero(n);
  e.coeffs_.at(static_cast<std::size_t>(k)) = 1.0;
  return e;
}

double BernsteinForm::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("BernsteinForm: x outside [0,1]");
  if (x == 0.0) return coeffs_.front();
  if (x == 1.0) return coeffs_.back();
  std::vector<double> b = coeffs_;
  const double y = 1.0 - x;
  for (int r = 1; r <= n_; ++r) {
    for (int i = 0; i <= n_ - r; ++i) b[i] = y * b[i] + x * b[i + 1];
  }
  return b[0];
}

BernsteinForm BernsteinForm::raised_to(int m) const {
  if (m < n_) throw DomainError("BernsteinForm::raised_to: cannot lower the degree");
  std::vector<double> c = coeffs_;
  for (int d = n_; d < m; ++d) {
    std::vector<double> next(static_cast<std::size_t>(d) + 2, 0.0);
    const double inv = 1.0 / (d + 1);
    for (int k = 0; k <= d + 1; ++k) {
      const double w = k * inv;
      if (k >= 1) next[k] += w * c[k - 1];
      if (k <= d) next[k] += (1.0 - w) * c[k];
    }
    c = std::move(next);
  }
  return BernsteinForm(m, std::move(c));
}

BernsteinForm& BernsteinForm::operator+=(const BernsteinForm& o) {
  const int m = std::max(n_, o.n_);
  if (n_ < m) *this = raised_to(m);
  const BernsteinForm rhs = o.n_ < m ? o.raised_to(m) : o;
  for (int k = 0; k <= m; ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

BernsteinForm& BernsteinForm::operator-=(const BernsteinForm& o) {
  const int m = std::max(n_, o.n_);
  if (n_ < m) *this = raised_to(m);
  const BernsteinForm rhs = o.n_ < m ? o.raised_to(m) : o;
  for (int k = 0; k <= m; ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

BernsteinForm& BernsteinForm::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

std::string BernsteinForm::to_json() const {
  nlohmann::json j;
  j["degree"] = n_;
  j["coeffs"] = coeffs_;
  return j.dump();
}

BernsteinForm BernsteinForm::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    return BernsteinForm(j.at("degree").get<int>(), j.at("coeffs").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("BernsteinForm::from_json: ") + e.what());
  }
}

BernsteinForm dtilde_form(const BernsteinForm& p) {
  const int n = p.degree();
  const auto& c = p.coeffs();
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n - 1; ++j) {
    d[j] = static_cast<double>(j) * (n - j) * ((c[j - 1] - c[j]) + (c[j + 1] - c[j]));
  }
  return BernsteinForm(n, std::move(d));
}

BernsteinForm apply_U(const FunctionSpec& f, int n, double tol) {
  if (n < 1) throw DomainError("apply_U: n must be >= 1");
  if (f.exact()) {
    const auto u = u_coefficients_exact(*f.exact(), n);
    std::vector<double> c;
    c.reserve(u.size());
    for (const auto& q : u) c.push_back(q.get_d());
    return BernsteinForm(n, std::move(c));
  }
  return BernsteinForm(n, u_coefficients_numeric(f, n, tol));
}

BernsteinForm apply_U(const BernsteinForm& p, int n) {
  if (n < 1) throw DomainError("apply_U: n must be >= 1");
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  u[0] = p(0.0);
  u[n] = p(1.0);
  if (n >= 2) {
    // Integrand degree (n-2) + deg p; the rule is exact for it.
    const int m = std::max(1, (n - 2 + p.degree()) / 2 + 1);
    const QuadratureRule rule = gauss_legendre(m);
    for (int i = 0; i < rule.m; ++i) {
      const double t = rule.nodes[i];
      const double w = rule.weights[i] * p(t);
      const BasisVector b = bernstein_vector(n - 2, t);
      for (int k = 1; k <= n - 1; ++k) u[k] += w * b.values[k - 1];
    }
    for (int k = 1; k <= n - 1; ++k) u[k] *= (n - 1);
  }
  return BernsteinForm(n, std::move(u));
}

namespace {

BernsteinForm modify(BernsteinForm u) {
  const int n = u.degree();
  BernsteinForm d = dtilde_form(u);
  d *= 1.0 / n;
  return u -= d;
}

}  // namespace

BernsteinForm apply_Utilde(const FunctionSpec& f, int n, double tol) {
  return modify(apply_U(f, n, tol));
}

BernsteinForm apply_Utilde(const BernsteinForm& p, int n) { return modify(apply_U(p, n)); }

BernsteinForm iterate_Utilde(const FunctionSpec& f, int n, int times, double tol) {
  if (times < 1) throw DomainError("iterate_Utilde: times must be >= 1");
  BernsteinForm g = apply_Utilde(f, n, tol);
  for (int i = 1; i < times; ++i) g = apply_Utilde(g, n);
  return g;
}

}  // namespace gsops
