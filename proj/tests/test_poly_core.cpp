#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sosvol/gram.hpp"
#include "sosvol/moments.hpp"
#include "sosvol/poly_io.hpp"
#include "sosvol/polynomial.hpp"
#include "sosvol/rng.hpp"
#include "test_util.hpp"

using namespace sosvol;
using testutil::motzkin;
using testutil::random_poly;
using testutil::random_rotation;

TEST_CASE("dimension formulas") {
  CHECK(dim_p(3, 2) == 6);
  CHECK(dim_p(1, 7) == 1);
  CHECK(dim_p(4, 4) == 35);
  // Independent enumeration oracle for dim_p(4, 4).
  long count = 0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          if (a + b + c + d == 4) ++count;
  CHECK(dim_p(4, 4) == count);
  CHECK(MonomialBasis::get(4, 4).size() == static_cast<std::size_t>(count));

  CHECK(dim_m(3, 2) == 14);
  CHECK(dim_m(3, 1) == 5);
  CHECK(dim_m(4, 2) == 34);

  CHECK_THROWS_AS(dim_p(200, 100), std::overflow_error);
  CHECK_THROWS_AS(dim_p(0, 2), std::invalid_argument);
}

TEST_CASE("sphere moments: exact values") {
  CHECK(sphere_moment(MultiIndex({2, 0, 0}), 3) == Rational(1, 3));
  CHECK(sphere_moment(MultiIndex({1, 1, 0}), 3) == Rational(0));
  CHECK(sphere_moment(MultiIndex({2, 2, 0}), 3) == Rational(1, 15));
  CHECK(sphere_moment(MultiIndex({4, 0, 0}), 3) == Rational(1, 5));
  CHECK(sphere_moment(MultiIndex({8, 0, 0}), 3) == Rational(1, 9));
  CHECK_THROWS_AS(sphere_moment(MultiIndex({2, 0}), 3), std::invalid_argument);
}

TEST_CASE("sphere moments: Monte Carlo quadrature oracle for (2,2,0)") {
  // Independent check of 1/15 by direct quadrature with 1e7 points.
  const long points = 10000000;
  double sum = 0.0;
  for (long i = 0; i < points; ++i) {
    CounterRng rng(20260809, static_cast<std::uint64_t>(i));
    double x[3];
    double norm2 = 0.0;
    for (auto& v : x) {
      v = rng.next_gaussian();
      norm2 += v * v;
    }
    sum += x[0] * x[0] * x[1] * x[1] / (norm2 * norm2);
  }
  const double mc = sum / static_cast<double>(points);
  CHECK(std::abs(mc - 1.0 / 15.0) < 1e-3);
}

TEST_CASE("sphere moments: recursion and r^2 summation identities") {
  // moment(a + 2e_i) = (a_i + 1)/(n + |a|) moment(a) for even a, and
  // sum_i moment(a + 2e_i) = moment(a); both exact in rational arithmetic.
  for (int n = 2; n <= 4; ++n) {
    std::vector<MultiIndex> all;
    std::vector<int> stack(static_cast<std::size_t>(n), 0);
    for (int d = 0; d <= 6; ++d)
      for (const auto& alpha : MonomialBasis::get(n, d).indices()) all.push_back(alpha);
    for (const auto& alpha : all) {
      Rational total(0);
      bool even = true;
      for (int i = 0; i < n; ++i)
        if (alpha[i] % 2 != 0) even = false;
      const Rational base = sphere_moment(alpha, n);
      for (int i = 0; i < n; ++i) {
        MultiIndex up = alpha;
        up[i] += 2;
        const Rational m_up = sphere_moment(up, n);
        total += m_up;
        if (even)
          CHECK(m_up == base * Rational(alpha[i] + 1, n + alpha.degree()));
      }
      CHECK(total == base);
    }
  }
}

TEST_CASE("r_power expansions and evaluation") {
  const HomogeneousPoly r2 = r_power(2, 1);
  CHECK(r2.coef(MultiIndex({2, 0})) == 1.0);
  CHECK(r2.coef(MultiIndex({1, 1})) == 0.0);
  CHECK(r2.coef(MultiIndex({0, 2})) == 1.0);

  const HomogeneousPoly r4 = r_power(3, 2);
  CHECK(r4.coef(MultiIndex({4, 0, 0})) == 2.0 - 1.0);
  CHECK(r4.coef(MultiIndex({2, 2, 0})) == 2.0);
  CHECK(r4.coef(MultiIndex({2, 0, 2})) == 2.0);
  CHECK(r4.coef(MultiIndex({0, 2, 2})) == 2.0);
  CHECK(r4.coef(MultiIndex({0, 4, 0})) == 1.0);

  const HomogeneousPoly r6 = r_power(5, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto v = testutil::random_unit_point(5, 100 + static_cast<std::uint64_t>(trial));
    CHECK(r6.evaluate(v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("evaluation examples and homogeneity") {
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<double> diag{s, s, s};
  CHECK(std::abs(motzkin().evaluate(diag)) < 1e-15);

  HomogeneousPoly f(3, 6);
  f.set_coef(MultiIndex({4, 2, 0}), 1.0);
  const std::vector<double> p{2.0, 1.0, 0.0};
  CHECK(f.evaluate(p) == doctest::Approx(16.0));

  const HomogeneousPoly g = random_poly(3, 4, 7);
  CounterRng rng(9, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = 0.2 + rng.next_unit() * 2.0;
    std::vector<double> x(3), tx(3);
    for (int i = 0; i < 3; ++i) {
      x[static_cast<std::size_t>(i)] = rng.next_gaussian();
      tx[static_cast<std::size_t>(i)] = t * x[static_cast<std::size_t>(i)];
    }
    CHECK(g.evaluate(tx) ==
          doctest::Approx(std::pow(t, 4) * g.evaluate(x)).epsilon(1e-10));
  }
}

TEST_CASE("gradient matches finite differences") {
  const HomogeneousPoly f = random_poly(4, 4, 11);
  const auto x = testutil::random_unit_point(4, 12);
  std::vector<double> grad(4);
  const double fx = f.eval_gradient(x, grad);
  CHECK(fx == doctest::Approx(f.evaluate(x)).epsilon(1e-13));
  const double h = 1e-6;
  for (int i = 0; i < 4; ++i) {
    auto xp = x, xm = x;
    xp[static_cast<std::size_t>(i)] += h;
    xm[static_cast<std::size_t>(i)] -= h;
    const double fd = (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
    CHECK(grad[static_cast<std::size_t>(i)] == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("apolar inner product examples") {
  auto ctx = GramContext::build(3, 4);
  const HomogeneousPoly r4 = r_power(3, 2);
  CHECK(apolar_inner(r4, r4, *ctx) == doctest::Approx(1.0).epsilon(1e-13));

  HomogeneousPoly x2(3, 2), y2(3, 2), xy(3, 2);
  x2.set_coef(MultiIndex({2, 0, 0}), 1.0);
  y2.set_coef(MultiIndex({0, 2, 0}), 1.0);
  xy.set_coef(MultiIndex({1, 1, 0}), 1.0);
  auto ctx2 = GramContext::build(3, 2);
  CHECK(apolar_inner(x2, y2, *ctx2) == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
  CHECK(apolar_inner(xy, x2, *ctx2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(apolar_inner(x2, r4, *ctx2), std::invalid_argument);
}

TEST_CASE("Gram factorization across the desk grid") {
  // Positive definiteness surfaces as factor existence; the factor must
  // reproduce the exact Gram entrywise relative to the row/column scale.
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{
           {2, 2}, {2, 6}, {3, 2}, {3, 4}, {3, 6}, {4, 4}, {5, 4}, {5, 6}}) {
    auto ctx = GramContext::build(n, d);
    const Eigen::MatrixXd recon = ctx->factor() * ctx->factor().transpose();
    const int dim = ctx->dim();
    CHECK(dim == dim_p(n, d));
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const double scale = std::sqrt(ctx->gram()(i, i) * ctx->gram()(j, j));
        worst = std::max(worst, std::abs(recon(i, j) - ctx->gram()(i, j)) / scale);
      }
    CHECK(worst < 1e-12);
    // Orthonormal columns really are orthonormal under the Gram metric.
    const Eigen::MatrixXd gram_of_u =
        ctx->orthonormal().transpose() * ctx->gram() * ctx->orthonormal();
    CHECK((gram_of_u - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("positive definiteness of <f,f> for random nonzero f") {
  auto ctx = GramContext::build(4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const HomogeneousPoly f = random_poly(4, 4, 200 + static_cast<std::uint64_t>(trial));
    CHECK(ctx->inner(f, f) > 0.0);
  }
}

TEST_CASE("rotation invariance of the apolar inner product") {
  auto ctx = GramContext::build(3, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto seed = 300 + static_cast<std::uint64_t>(trial);
    const HomogeneousPoly f = random_poly(3, 4, seed);
    const HomogeneousPoly g = random_poly(3, 4, seed + 1000);
    const Eigen::MatrixXd rot = random_rotation(3, seed);
    const double before = apolar_inner(f, g, *ctx);
    const double after = apolar_inner(f.compose_linear(rot), g.compose_linear(rot), *ctx);
    CHECK(std::abs(after - before) < 1e-9 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("project_to_m") {
  auto ctx = GramContext::build(3, 4);
  const HomogeneousPoly r4 = r_power(3, 2);
  CHECK(project_to_m(r4, *ctx).is_zero(1e-14));

  // f = x1^2 at n=3 projects to x1^2 - r^2/3.
  auto ctx2 = GramContext::build(3, 2);
  HomogeneousPoly x2(3, 2);
  x2.set_coef(MultiIndex({2, 0, 0}), 1.0);
  const HomogeneousPoly proj = project_to_m(x2, *ctx2);
  const HomogeneousPoly expected = x2 - r_power(3, 1) * (1.0 / 3.0);
  CHECK((proj - expected).max_abs_coef() < 1e-15);
  CHECK(std::abs(sphere_integral(proj)) < 1e-12);

  // Idempotence on something already in M.
  const HomogeneousPoly again = project_to_m(proj, *ctx2);
  CHECK((again - proj).max_abs_coef() < 1e-15);
}

TEST_CASE("polynomial JSON round trip and errors") {
  const HomogeneousPoly m = motzkin();
  const HomogeneousPoly back = poly_from_json(poly_to_json(m));
  CHECK((back - m).max_abs_coef() == 0.0);

  CHECK_THROWS_AS(poly_from_json("{ not json"), std::invalid_argument);
  CHECK_THROWS_AS(
      poly_from_json(R"({"n":2,"degree":2,"terms":[{"exps":[1,0],"coef":1}]})"),
      std::invalid_argument);  // degree mismatch
  CHECK_THROWS_AS(
      poly_from_json(
          R"({"n":2,"degree":2,"terms":[{"exps":[2,0],"coef":1},{"exps":[2,0],"coef":3}]})"),
      std::invalid_argument);  // duplicate exponents
  CHECK_THROWS_AS(
      poly_from_json(R"({"n":2,"degree":2,"terms":[{"exps":[1,1,0],"coef":1}]})"),
      std::invalid_argument);  // wrong length
  CHECK_THROWS_AS(
      poly_from_json(R"({"n":2,"degree":2,"terms":[{"exps":[2,0],"coef":null}]})"),
      std::invalid_argument);  // non-numeric coefficient
}
