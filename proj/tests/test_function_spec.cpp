#include <gtest/gtest.h>

#include <cmath>

#include "gsops/errors.hpp"
#include "gsops/function_spec.hpp"

using namespace gsops;

TEST(Catalog, ContainsRequiredEntries) {
  const std::vector<std::string> want = {"one", "t", "t2", "t3", "t5_minus_t2", "exp", "sin_pi", "abs_pow52"};
  EXPECT_EQ(catalog_ids(), want);
  EXPECT_THROW(catalog_entry("nope"), DomainError);
}

TEST(Catalog, PolynomialDegrees) {
  EXPECT_EQ(catalog_entry("one").polynomial_degree(), 0);
  EXPECT_EQ(catalog_entry("t3").polynomial_degree(), 3);
  EXPECT_EQ(catalog_entry("t5_minus_t2").polynomial_degree(), 5);
  EXPECT_FALSE(catalog_entry("exp").polynomial_degree().has_value());
  EXPECT_FALSE(catalog_entry("abs_pow52").exact().has_value());
}

TEST(Catalog, SmoothnessFlags) {
  const auto& s = catalog_entry("abs_pow52").smoothness();
  EXPECT_TRUE(s.in_w2);
  EXPECT_TRUE(s.in_w2_0);
  EXPECT_FALSE(s.dtilde_in_w2);
  EXPECT_FALSE(s.dtilde3_bounded);
  EXPECT_TRUE(catalog_entry("sin_pi").smoothness().dtilde3_bounded);
}

TEST(Catalog, OrderZeroIsEval) {
  for (const auto& f : catalog()) {
    for (double x : {0.0, 0.1, 0.5, 0.77, 1.0}) EXPECT_EQ(f.derivative(0, x), f.eval(x)) << f.id();
  }
  EXPECT_THROW(catalog_entry("exp").derivative(7, 0.5), DomainError);
  EXPECT_THROW(catalog_entry("exp").derivative(-1, 0.5), DomainError);
}

TEST(Catalog, DerivativesMatchCentredDifferences) {
  const double h = 1e-5;
  for (const auto& f : catalog()) {
    for (int order = 1; order <= FunctionSpec::kMaxDerivative; ++order) {
      for (int i = 0; i < 50; ++i) {
        // Interior points that avoid the kink of abs_pow52 at 1/2.
        const double x = (i + 0.5) / 50.0;
        const double fd = (f.derivative(order - 1, x + h) - f.derivative(order - 1, x - h)) / (2 * h);
        const double d = f.derivative(order, x);
        const double scale = std::max({std::abs(d), std::abs(f.derivative(order - 1, x)), 1.0});
        ASSERT_LE(std::abs(d - fd), 1e-5 * scale) << f.id() << " order " << order << " x " << x;
      }
    }
  }
}

TEST(Catalog, SpecificValues) {
  EXPECT_DOUBLE_EQ(catalog_entry("t5_minus_t2").eval(0.5), 1.0 / 32 - 0.25);
  EXPECT_NEAR(catalog_entry("sin_pi").derivative(2, 0.5), -M_PI * M_PI, 1e-13);
  EXPECT_NEAR(catalog_entry("abs_pow52").eval(0.1), std::pow(0.4, 2.5), 1e-16);
  EXPECT_NEAR(catalog_entry("abs_pow52").derivative(1, 0.1), -2.5 * std::pow(0.4, 1.5), 1e-15);
}

TEST(DtildePower, PolynomialClosedForms) {
  const auto& t2 = catalog_entry("t2");
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const double p = x * (1 - x);
    EXPECT_NEAR(t2.dtilde_power(0)(x), x * x, 1e-15);
    EXPECT_NEAR(t2.dtilde_power(1)(x), 2 * p, 1e-15);
    EXPECT_NEAR(t2.dtilde_power(2)(x), -4 * p, 1e-15);
    EXPECT_NEAR(t2.dtilde_power(3)(x), 8 * p, 1e-15);
  }
  EXPECT_THROW(t2.dtilde_power(4), DomainError);
}

TEST(DtildePower, AnalyticExpansionForTranscendentals) {
  // D^2 e^x = phi (phi e^x)'' with (phi e^x)'' = e^x (phi + 2 phi' + phi'') = e^x (phi + 2 - 4x - 2 + ...).
  // Checked against a nested centred difference of D e^x.
  const auto& e = catalog_entry("exp");
  const auto d1 = e.dtilde_power(1);
  const auto d2 = e.dtilde_power(2);
  const auto d3 = e.dtilde_power(3);
  const double h = 1e-4;
  for (double x : {0.15, 0.4, 0.63, 0.88}) {
    const double p = x * (1 - x);
    EXPECT_NEAR(d1(x), p * std::exp(x), 1e-15);
    const double fd2 = p * (d1(x + h) - 2 * d1(x) + d1(x - h)) / (h * h);
    EXPECT_NEAR(d2(x), fd2, 1e-6);
    const double fd3 = p * (d2(x + h) - 2 * d2(x) + d2(x - h)) / (h * h);
    EXPECT_NEAR(d3(x), fd3, 1e-5);
  }
}

TEST(DtildeSpec, MatchesDtildePower) {
  for (const char* id : {"t3", "exp", "sin_pi"}) {
    const auto& f = catalog_entry(id);
    const FunctionSpec g = dtilde_spec(f);
    for (double x : {0.1, 0.37, 0.5, 0.81}) {
      EXPECT_NEAR(g.eval(x), f.dtilde_power(1)(x), 1e-13) << id;
      EXPECT_NEAR(g.dtilde_power(1)(x), f.dtilde_power(2)(x), 1e-12) << id;
    }
  }
}
