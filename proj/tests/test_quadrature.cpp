#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gsops/errors.hpp"
#include "gsops/exactpoly.hpp"
#include "gsops/function_spec.hpp"
#include "gsops/quadrature.hpp"
#include "oracles.hpp"

using namespace gsops;
namespace oc = gsops::oracle;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

TEST(GaussLegendre, SmallRules) {
  const auto r1 = gauss_legendre(1);
  ASSERT_EQ(r1.m, 1);
  EXPECT_DOUBLE_EQ(r1.nodes[0], 0.5);
  EXPECT_DOUBLE_EQ(r1.weights[0], 1.0);

  const auto r2 = gauss_legendre(2);
  EXPECT_NEAR(r2.nodes[0], (1 - 1 / std::sqrt(3.0)) / 2, 1e-16);
  EXPECT_NEAR(r2.nodes[1], (1 + 1 / std::sqrt(3.0)) / 2, 1e-16);
  EXPECT_DOUBLE_EQ(r2.weights[0], 0.5);
  EXPECT_DOUBLE_EQ(r2.weights[1], 0.5);
  EXPECT_EQ(r2.exactness(), 3);
}

TEST(GaussLegendre, RejectsBadSizes) {
  EXPECT_THROW(gauss_legendre(0), DomainError);
  EXPECT_THROW(gauss_legendre(513), DomainError);
}

TEST(GaussLegendre, StructuralInvariants) {
  for (int m : {1, 2, 3, 5, 8, 13, 24, 64, 100, 257, 512}) {
    const auto r = gauss_legendre(m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      EXPECT_GT(r.weights[i], 0.0);
      EXPECT_GT(r.nodes[i], 0.0);
      EXPECT_LT(r.nodes[i], 1.0);
      if (i > 0) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
      EXPECT_NEAR(r.nodes[i] + r.nodes[m - 1 - i], 1.0, 4 * kEps);
      sum += r.weights[i];
    }
    EXPECT_NEAR(sum, 1.0, 4 * m * kEps) << m;
  }
}

TEST(GaussLegendre, ExactForMonomialsUpToDegree) {
  // int_0^1 x^d = 1/(d+1); up to the degree 2m - 1.
  for (int m = 1; m <= 40; ++m) {
    const auto r = gauss_legendre(m);
    for (int d = 0; d <= r.exactness(); ++d) {
      const double got = integrate([d](double x) { return std::pow(x, d); }, r, 1);
      const double want = 1.0 / (d + 1);
      ASSERT_LE(std::abs(got - want), 1e-13 * want) << m << " " << d;
    }
  }
  const auto r5 = gauss_legendre(5);
  EXPECT_NEAR(integrate([](double x) { return std::pow(x, 9); }, r5, 1), 0.1, 1e-14);
}

TEST(GaussLegendre, LargeRuleIntegratesSmoothFunctions) {
  const auto r = gauss_legendre(512);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, r, 1), oc::kEMinus1, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::cos(40 * x); }, r, 1), std::sin(40.0) / 40, 1e-14);
}

TEST(Integrate, SpecimenValues) {
  EXPECT_NEAR(integrate([](double) { return 1.0; }, gauss_legendre(7), 3), 1.0, 1e-15);
  EXPECT_NEAR(integrate([](double x) { return x * x; }, gauss_legendre(2), 1), 1.0 / 3, 1e-15);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, gauss_legendre(16), 1), oc::kEMinus1, 1e-13);
}

TEST(Integrate, CompositeRuleConverges) {
  const auto r = gauss_legendre(8);
  const auto f = [](double x) { return std::sqrt(x + 0.01); };
  const double want = (2.0 / 3) * (std::pow(1.01, 1.5) - std::pow(0.01, 1.5));
  double prev = 1.0;
  for (int panels : {1, 4, 16, 64}) {
    const double err = std::abs(integrate(f, r, panels) - want);
    EXPECT_LE(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-12);
}

TEST(Integrate, ErrorsSurface) {
  const auto r = gauss_legendre(3);
  EXPECT_THROW(integrate([](double) { return 1.0; }, r, 0), DomainError);
  EXPECT_THROW(integrate([](double) { return std::nan(""); }, r, 1), IntegrationError);
  EXPECT_THROW(integrate([](double x) { return 1.0 / (x - 0.5); }, gauss_legendre(1), 1),
               IntegrationError);
}

TEST(URuleSize, Formula) {
  EXPECT_EQ(u_rule_size(2, 2), 24);
  EXPECT_EQ(u_rule_size(60, 3), 36);
  EXPECT_EQ(u_rule_size(1000, std::nullopt), 504);
  EXPECT_EQ(u_rule_size(2000, std::nullopt), 512);
  EXPECT_GE(u_rule_size(30, std::nullopt), 24);
}

TEST(UCoefficientsNumeric, SpecimenValues) {
  const auto u = u_coefficients_numeric(catalog_entry("t2"), 2, 1e-12);
  EXPECT_NEAR(u[0], 0.0, 1e-12);
  EXPECT_NEAR(u[1], 1.0 / 3, 1e-12);
  EXPECT_NEAR(u[2], 1.0, 1e-12);
  for (double c : u_coefficients_numeric(catalog_entry("one"), 7, 1e-12)) EXPECT_NEAR(c, 1.0, 4 * kEps);
  const auto e = u_coefficients_numeric(catalog_entry("exp"), 3, 1e-13);
  EXPECT_NEAR(e[1], oc::kTwoEMinus2, 1e-12);
  EXPECT_DOUBLE_EQ(e[0], 1.0);
  EXPECT_DOUBLE_EQ(e[3], std::exp(1.0));
}

TEST(UCoefficientsNumeric, MatchesExactOracleForPolynomials) {
  // Random integer polynomials of degree <= 8; the numeric route is forced by
  // wrapping the evaluation in a FunctionSpec without an exact polynomial.
  for (int deg = 0; deg <= 8; ++deg) {
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back((i * 7 + deg * 3) % 11 - 5);
    const RationalPoly p(c);
    const FunctionSpec numeric("p", [p](int order, double x) {
      RationalPoly q = p;
      for (int i = 0; i < order; ++i) q = q.derivative();
      return q.eval(x);
    }, SmoothnessClass{});
    for (int n = 1; n <= 40; ++n) {
      const auto got = u_coefficients_numeric(numeric, n, 1e-13);
      const auto want = u_coefficients_exact(p, n);
      for (int k = 0; k <= n; ++k) ASSERT_NEAR(got[k], want[k].get_d(), 1e-12) << deg << " " << n << " " << k;
    }
  }
}

TEST(UCoefficientsNumeric, PositiveFunctionalsOnNonnegativeInput) {
  for (const char* id : {"exp", "abs_pow52", "t2", "one"}) {
    for (int n : {2, 5, 17, 64, 200}) {
      for (double c : u_coefficients_numeric(catalog_entry(id), n, 1e-12)) EXPECT_GE(c, -1e-14) << id << " " << n;
    }
  }
  const FunctionSpec sin_sq("sin_sq", [](int, double x) { return std::pow(std::sin(3 * x), 2); }, SmoothnessClass{});
  for (double c : u_coefficients_numeric(sin_sq, 30, 1e-12)) EXPECT_GE(c, -1e-14);
}

TEST(UCoefficientsNumeric, NonFiniteAndToleranceFailures) {
  const FunctionSpec bad("bad", [](int, double x) { return x > 0.3 && x < 0.4 ? std::nan("") : 1.0; }, SmoothnessClass{});
  EXPECT_THROW(u_coefficients_numeric(bad, 5, 1e-12), IntegrationError);

  // 1/sqrt(t) near 0 converges far too slowly for 1e-15 under panel doubling.
  const FunctionSpec rough("rough", [](int, double x) { return x == 0.0 ? 0.0 : 1.0 / std::sqrt(x); }, SmoothnessClass{});
  try {
    u_coefficients_numeric(rough, 4, 1e-15);
    FAIL() << "expected ToleranceError";
  } catch (const ToleranceError& e) {
    EXPECT_EQ(e.best_estimate().size(), 5u);
    EXPECT_GT(e.achieved(), 1e-15);
  }
}
