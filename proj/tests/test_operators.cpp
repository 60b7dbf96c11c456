#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <thread>

#include "gsops/basis.hpp"
#include "gsops/errors.hpp"
#include "gsops/exactpoly.hpp"
#include "gsops/operators.hpp"
#include "oracles.hpp"

using namespace gsops;
namespace oc = gsops::oracle;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double dense_gap(const BernsteinForm& p, const std::function<double(double)>& g, int points = 4000) {
  return oc::dense_sup([&](double x) { return p(x) - g(x); }, points);
}

double exact_gap(const BernsteinForm& p, const RationalPoly& q, int points = 4000) {
  return dense_gap(p, [&](double x) { return q.eval(x); }, points);
}

const std::vector<const char*> kPolys = {"one", "t", "t2", "t3", "t5_minus_t2"};

}  // namespace

TEST(BernsteinForm, ConstructionAndEvaluation) {
  EXPECT_THROW(BernsteinForm(2, {1.0, 2.0}), DomainError);
  const BernsteinForm p(2, {1.0, -1.0, 3.0});
  EXPECT_EQ(p(0.0), 1.0);
  EXPECT_EQ(p(1.0), 3.0);
  EXPECT_DOUBLE_EQ(p(0.5), 0.25 * 1 + 0.5 * -1 + 0.25 * 3);
  EXPECT_THROW(p(1.01), DomainError);
  EXPECT_THROW(p(-0.01), DomainError);
}

TEST(BernsteinForm, RaisingPreservesValuesAndArithmetic) {
  const BernsteinForm p(3, {0.2, -1.0, 4.0, 0.5});
  const BernsteinForm q = p.raised_to(9);
  EXPECT_EQ(q.degree(), 9);
  for (double x : oc::random_points(50, 4)) EXPECT_NEAR(p(x), q(x), 1e-14);
  EXPECT_THROW(q.raised_to(5), DomainError);
  const BernsteinForm r(1, {1.0, 2.0});
  const BernsteinForm s = p + r * 2.0 - r;
  for (double x : oc::random_points(50, 5)) EXPECT_NEAR(s(x), p(x) + (1 + x), 1e-14);
}

TEST(BernsteinForm, JsonRoundTrip) {
  const BernsteinForm p(3, {0.1, -2.5, 1e-300, 7.0});
  const auto text = p.to_json();
  EXPECT_NE(text.find("\"degree\":3"), std::string::npos);
  const BernsteinForm q = BernsteinForm::from_json(text);
  EXPECT_EQ(q.degree(), 3);
  EXPECT_EQ(q.coeffs(), p.coeffs());
  EXPECT_THROW(BernsteinForm::from_json("{\"degree\":2,\"coeffs\":[1]}"), DomainError);
  EXPECT_THROW(BernsteinForm::from_json("nope"), DomainError);
}

TEST(DtildeForm, AnnihilatesAffineCoefficients) {
  for (int n = 0; n <= 80; ++n) {
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = -0.7 + 1.3 * k / std::max(n, 1);
    const auto d = dtilde_form(BernsteinForm(n, c));
    double norm = 0.0;
    for (double v : c) norm = std::max(norm, std::abs(v));
    for (double v : d.coeffs()) ASSERT_LE(std::abs(v), 8.0 * std::max(n, 1) * kEps * norm * n * n / 4 + 1e-300)
                                    << n;
  }
}

TEST(DtildeForm, SpecimenValues) {
  // t^2 at degree 2 has coefficients (0, 0, 1).
  const auto d2 = dtilde_form(BernsteinForm(2, {0.0, 0.0, 1.0}));
  EXPECT_NEAR(d2(0.25), 0.375, 1e-15);
  // t at any degree.
  for (int n : {1, 4, 30}) {
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = static_cast<double>(k) / n;
    const auto d = dtilde_form(BernsteinForm(n, c));
    for (double v : d.coeffs()) EXPECT_NEAR(v, 0.0, 8 * n * kEps * n * n);
  }
}

TEST(DtildeForm, UnitVectorsGiveEigenRelation) {
  for (int n = 2; n <= 40; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto d = dtilde_form(BernsteinForm::unit(n, k));
      for (double x : oc::random_points(10, 31 * n + k)) {
        const double want = t_value(n, k, x) * bernstein_value(n, k, x);
        ASSERT_NEAR(d(x), want, 1e-10 * n * n) << n << " " << k << " " << x;
      }
    }
  }
}

TEST(DtildeForm, MatchesExactMonomialMap) {
  const RationalPoly p = RationalPoly::monomial(5) - RationalPoly::monomial(2) * 3 + RationalPoly::monomial(1);
  for (int n = 5; n <= 20; ++n) {
    const auto e = ExactBernsteinForm::from_monomial(p, n);
    std::vector<double> c;
    for (const auto& q : e.coeffs()) c.push_back(q.get_d());
    EXPECT_LE(exact_gap(dtilde_form(BernsteinForm(n, c)), dtilde_exact(p)), 1e-12) << n;
  }
}

TEST(ApplyU, SpecimenValues) {
  const auto u = apply_U(catalog_entry("t"), 9, kDefaultTol);
  for (int k = 0; k <= 9; ++k) EXPECT_NEAR(u.coeffs()[k], k / 9.0, 1e-15);
  EXPECT_LE(dense_gap(u, [](double x) { return x; }), 1e-12);
  const auto one = apply_U(catalog_entry("one"), 6, kDefaultTol);
  for (double c : one.coeffs()) EXPECT_EQ(c, 1.0);
  EXPECT_NEAR(apply_U(catalog_entry("t2"), 2, kDefaultTol)(0.5), 5.0 / 12, 1e-15);
}

TEST(ApplyU, RejectsBadDegree) {
  EXPECT_THROW(apply_U(catalog_entry("t"), 0, kDefaultTol), DomainError);
  EXPECT_THROW(apply_Utilde(catalog_entry("t"), 0, kDefaultTol), DomainError);
  EXPECT_THROW(iterate_Utilde(catalog_entry("t"), 3, 0, kDefaultTol), DomainError);
}

TEST(ApplyUtilde, SpecimenValues) {
  for (int n : {1, 2, 5, 40}) {
    EXPECT_LE(dense_gap(apply_Utilde(catalog_entry("t"), n, kDefaultTol), [](double x) { return x; }), 1e-12);
  }
  EXPECT_NEAR(apply_Utilde(catalog_entry("t2"), 3, kDefaultTol)(0.5), 0.25 + 0.25 / 6, 1e-15);
}

TEST(ApplyUtilde, ExpJacksonBound) {
  const auto& e = catalog_entry("exp");
  const auto ut = apply_Utilde(e, 4, kDefaultTol);
  const double err = dense_gap(ut, [](double x) { return std::exp(x); }, 1000000);
  const double d2 = oc::dense_sup(e.dtilde_power(2), 1000000);
  EXPECT_LE(err, d2 / 16);
  EXPECT_GT(err, 0.0);
}

TEST(ApplyUtilde, MatchesExactOracleForPolynomials) {
  for (const char* id : kPolys) {
    const auto& f = catalog_entry(id);
    for (int n = 1; n <= 40; ++n) {
      const RationalPoly want = apply_Utilde_exact(*f.exact(), n).to_monomial();
      ASSERT_LE(exact_gap(apply_Utilde(f, n, kDefaultTol), want), 1e-10) << id << " " << n;
    }
  }
}

TEST(ApplyUtilde, NumericPathMatchesExactOracle) {
  // Strip the exact polynomial so the quadrature route is exercised.
  const auto& t5 = catalog_entry("t5_minus_t2");
  const FunctionSpec numeric("t5_numeric", [&t5](int order, double x) { return t5.derivative(order, x); },
                             t5.smoothness());
  for (int n : {2, 3, 7, 16, 33}) {
    const RationalPoly want = apply_Utilde_exact(*t5.exact(), n).to_monomial();
    EXPECT_LE(exact_gap(apply_Utilde(numeric, n, kDefaultTol), want), 1e-10) << n;
  }
}

TEST(Operators, EndpointInterpolation) {
  for (const auto& f : catalog()) {
    for (int n : {1, 2, 3, 8, 31, 64}) {
      const auto u = apply_U(f, n, kDefaultTol);
      const auto ut = apply_Utilde(f, n, kDefaultTol);
      EXPECT_NEAR(u(0.0), f.eval(0.0), 1e-12) << f.id() << n;
      EXPECT_NEAR(u(1.0), f.eval(1.0), 1e-12) << f.id() << n;
      EXPECT_NEAR(ut(0.0), f.eval(0.0), 1e-12) << f.id() << n;
      EXPECT_NEAR(ut(1.0), f.eval(1.0), 1e-12) << f.id() << n;
    }
  }
}

TEST(Operators, LinearReproduction) {
  const FunctionSpec affine("affine", [](int order, double x) {
    return order == 0 ? 2.0 - 3.0 * x : (order == 1 ? -3.0 : 0.0);
  }, SmoothnessClass{true, true, true, true, true});
  for (int n = 1; n <= 100; ++n) {
    const auto g = [](double x) { return 2.0 - 3.0 * x; };
    ASSERT_LE(dense_gap(apply_U(affine, n, kDefaultTol), g, 500), 1e-12) << n;
    ASSERT_LE(dense_gap(apply_Utilde(affine, n, kDefaultTol), g, 500), 1e-12) << n;
  }
}

TEST(Operators, FloatCommutation) {
  const auto grid = [](const std::function<double(double)>& g) {
    double best = 0.0;
    for (int i = 0; i < 2001; ++i) best = std::max(best, std::abs(g(i / 2000.0)));
    return best;
  };
  for (const char* id : kPolys) {
    const auto& f = catalog_entry(id);
    const double fnorm = grid([&](double x) { return f.eval(x); });
    const FunctionSpec df = dtilde_spec(f);
    for (int n = 1; n <= 40; ++n) {
      const auto lhs = dtilde_form(apply_Utilde(f, n, kDefaultTol));
      const auto rhs = apply_Utilde(df, n, kDefaultTol);
      const double gap = grid([&](double x) { return lhs(x) - rhs(x); });
      ASSERT_LE(gap, 1e-8 * n * n * fnorm) << id << " " << n;
    }
  }
}

TEST(Operators, ContractionTowardF) {
  for (const auto& f : catalog()) {
    if (!f.smoothness().dtilde_in_w2) continue;
    const double df = oc::dense_sup(f.dtilde_power(1), 20000);
    for (int n : {4, 8, 16, 32, 64}) {
      const auto ut = apply_Utilde(f, n, kDefaultTol);
      const double err = dense_gap(ut, [&](double x) { return f.eval(x); }, 20000);
      EXPECT_LE(err, 2.0 / n * df * (1 + 1e-9) + 1e-12) << f.id() << " " << n;
    }
  }
}

TEST(IterateUtilde, SingleIterateIsApply) {
  const auto& e = catalog_entry("sin_pi");
  const auto a = iterate_Utilde(e, 7, 1, kDefaultTol);
  const auto b = apply_Utilde(e, 7, kDefaultTol);
  EXPECT_EQ(a.coeffs(), b.coeffs());
}

TEST(IterateUtilde, MatchesExactComposition) {
  const RationalPoly t2 = RationalPoly::monomial(2);
  const RationalPoly twice = Utilde_exact(Utilde_exact(t2, 2), 2);
  EXPECT_LE(exact_gap(iterate_Utilde(catalog_entry("t2"), 2, 2, kDefaultTol), twice), 1e-10);
  const RationalPoly t5 = *catalog_entry("t5_minus_t2").exact();
  for (int n : {2, 5, 11}) {
    const RationalPoly thrice = Utilde_exact(Utilde_exact(Utilde_exact(t5, n), n), n);
    EXPECT_LE(exact_gap(iterate_Utilde(catalog_entry("t5_minus_t2"), n, 3, kDefaultTol), thrice), 1e-10) << n;
  }
}

TEST(IterateUtilde, TripleIterateNormBound) {
  const double bound = 3 * std::sqrt(3.0);
  for (const auto& f : catalog()) {
    const double fnorm = oc::dense_sup([&](double x) { return f.eval(x); }, 4000);
    for (int n : {2, 3, 8, 20}) {
      const auto g = iterate_Utilde(f, n, 3, kDefaultTol);
      EXPECT_LE(oc::dense_sup([&](double x) { return g(x); }, 4000), bound * fnorm + 1e-12) << f.id() << n;
    }
  }
}

TEST(Operators, ThreadDeterminism) {
  const auto& f = catalog_entry("abs_pow52");
  const auto ref = apply_Utilde(f, 37, kDefaultTol).coeffs();
  std::vector<std::vector<double>> out(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { out[i] = apply_Utilde(f, 37, kDefaultTol).coeffs(); });
  for (auto& th : pool) th.join();
  for (const auto& o : out) EXPECT_EQ(o, ref);
}
