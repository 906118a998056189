#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sosvol/estimators.hpp"
#include "sosvol/m_basis.hpp"
#include "sosvol/optimize.hpp"
#include "test_util.hpp"

using namespace sosvol;
using testutil::motzkin;

namespace {

OptimizerConfig quick_cfg(std::uint64_t seed = 1) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

HomogeneousPoly quadratic_from_matrix(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  HomogeneousPoly f(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiIndex e;
      e.exponents.assign(static_cast<std::size_t>(n), 0);
      e[i] += 1;
      e[j] += 1;
      f.add_coef(e, a(i, j));
    }
  return f;
}

}  // namespace

TEST_CASE("min_on_sphere: Motzkin reaches its zero set") {
  const ExtremeResult r = min_on_sphere(motzkin(), quick_cfg());
  CHECK(std::abs(r.value) < 1e-6);
  CHECK(r.starts_converged > 0);
  CHECK_FALSE(r.certified);
  double norm2 = 0.0;
  for (double x : r.argpoint) norm2 += x * x;
  CHECK(std::abs(std::sqrt(norm2) - 1.0) < 1e-12);
  CHECK(std::abs(motzkin().evaluate(r.argpoint) - r.value) < 1e-10);
  // The zero set is the diagonal family (+-1,+-1,+-1)/sqrt(3) together with
  // the two axis pairs (+-1,0,0), (0,+-1,0); the argpoint must be near one.
  const double s = 1.0 / std::sqrt(3.0);
  double best_dist = 1e300;
  auto consider = [&](double a, double b, double c) {
    const double d = std::hypot(r.argpoint[0] - a, r.argpoint[1] - b, r.argpoint[2] - c);
    best_dist = std::min(best_dist, d);
  };
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) consider(sx * s, sy * s, sz * s);
  for (int sx : {-1, 1}) {
    consider(sx, 0.0, 0.0);
    consider(0.0, sx, 0.0);
  }
  CHECK(best_dist < 1e-2);
}

TEST_CASE("min_on_sphere: x1^2 - x2^2 attains -1 on the axis") {
  HomogeneousPoly f(2, 2);
  f.set_coef(MultiIndex({2, 0}), 1.0);
  f.set_coef(MultiIndex({0, 2}), -1.0);
  const ExtremeResult r = min_on_sphere(f, quick_cfg());
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(r.argpoint[0]) < 1e-5);
  CHECK(std::abs(std::abs(r.argpoint[1]) - 1.0) < 1e-5);
}

TEST_CASE("min_on_sphere: quadratic eigenvalue oracle") {
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 3;
    Eigen::MatrixXd a(n, n);
    CounterRng rng(500 + static_cast<std::uint64_t>(trial), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.next_gaussian();
    const HomogeneousPoly f = quadratic_from_matrix(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const ExtremeResult r = min_on_sphere(f, quick_cfg(9 + static_cast<std::uint64_t>(trial)));
    CHECK(std::abs(r.value - es.eigenvalues().minCoeff()) < 1e-8);
  }
}

TEST_CASE("linf_norm examples") {
  CHECK(linf_norm(r_power(3, 2), quick_cfg()).value == doctest::Approx(1.0).epsilon(1e-9));

  // x1^2 - r^2/3: values on the sphere are a - 1/3 for a in [0,1].
  HomogeneousPoly f(3, 2);
  f.set_coef(MultiIndex({2, 0, 0}), 1.0);
  f = f - r_power(3, 1) * (1.0 / 3.0);
  CHECK(linf_norm(f, quick_cfg()).value == doctest::Approx(2.0 / 3.0).epsilon(1e-8));

  // Homogeneity of the norm under scaling.
  const HomogeneousPoly g = testutil::random_poly(3, 4, 321);
  const double base = linf_norm(g, quick_cfg(5)).value;
  for (double c : {-2.5, 0.75}) {
    CHECK(linf_norm(g * c, quick_cfg(5)).value ==
          doctest::Approx(std::abs(c) * base).epsilon(1e-7));
  }
}

TEST_CASE("gauge_c examples and preconditions") {
  HomogeneousPoly f(3, 2);
  f.set_coef(MultiIndex({2, 0, 0}), 1.0);
  f = f - r_power(3, 1) * (1.0 / 3.0);
  const double g = gauge_c(f, quick_cfg());
  CHECK(g == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  // Positive homogeneity, and gauge of the normalized boundary point is 1.
  CHECK(gauge_c(f * 2.0, quick_cfg()) == doctest::Approx(2.0 * g).epsilon(1e-8));
  CHECK(gauge_c(f * (1.0 / g), quick_cfg()) == doctest::Approx(1.0).epsilon(2e-6));

  CHECK_THROWS_AS(gauge_c(r_power(3, 1), quick_cfg()), std::invalid_argument);
  CHECK_THROWS_AS(gauge_c(HomogeneousPoly(3, 2), quick_cfg()), std::invalid_argument);
}

TEST_CASE("gauge_c is rotation invariant") {
  auto ctx = GramContext::build(3, 4);
  const MBasis basis = MBasis::build(ctx);
  const OptimizerConfig cfg = quick_cfg(77);
  for (int trial = 0; trial < 3; ++trial) {
    const HomogeneousPoly f =
        testutil::random_unit_form_in_m(basis, 600 + static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXd rot = testutil::random_rotation(3, 601 + static_cast<std::uint64_t>(trial));
    const double before = gauge_c(f, cfg);
    const double after = gauge_c(f.compose_linear(rot), cfg);
    CHECK(std::abs(after - before) < 2.0 * cfg.value_tolerance + 1e-7);
  }
}

TEST_CASE("min_on_sphere: thread count never changes the result") {
  const HomogeneousPoly f = testutil::random_poly(3, 4, 901);
  OptimizerConfig cfg;
  cfg.seed = 902;
  const ExtremeResult serial = min_on_sphere(f, cfg);
  cfg.threads = 3;
  const ExtremeResult threaded = min_on_sphere(f, cfg);
  CHECK(serial.value == threaded.value);
  CHECK(serial.argpoint == threaded.argpoint);
  CHECK(serial.starts_converged == threaded.starts_converged);
}

TEST_CASE("min_on_sphere: exhausted iteration budget is reported") {
  const HomogeneousPoly f = testutil::random_poly(3, 4, 903);
  OptimizerConfig cfg;
  cfg.seed = 904;
  cfg.max_iters = 0;
  const ExtremeResult r = min_on_sphere(f, cfg);
  CHECK(r.starts_converged == 0);
}

TEST_CASE("barvinok factor: values and the Stirling cap") {
  CHECK(barvinok_factor(3, 1) == doctest::Approx(std::pow(28.0, 1.0 / 6.0)).epsilon(1e-12));
  for (int k = 1; k <= 5; ++k)
    CHECK(barvinok_factor(1, k) == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 1; n <= 200; n += (n < 20 ? 1 : 13))
    for (int k = 1; k <= 10; ++k)
      CHECK(barvinok_factor(n, k) <= 2.0 * std::sqrt(2.0 * k + 1.0));
}

TEST_CASE("lp_norm: exact values and the Hoelder ladder") {
  auto ctx2 = GramContext::build(3, 2);
  auto ctx4 = GramContext::build(3, 4);
  CHECK(lp_norm(r_power(3, 1), 2, *ctx2).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_norm(r_power(3, 2), 4, *ctx4).value == doctest::Approx(1.0).epsilon(1e-13));

  HomogeneousPoly x2(3, 2);
  x2.set_coef(MultiIndex({2, 0, 0}), 1.0);
  CHECK(lp_norm(x2, 2, *ctx2).value ==
        doctest::Approx(std::sqrt(1.0 / 5.0)).epsilon(1e-13));

  CHECK_THROWS_AS(lp_norm(x2, 3, *ctx2), std::invalid_argument);

  for (int trial = 0; trial < 100; ++trial) {
    const HomogeneousPoly f = testutil::random_poly(3, 2, 700 + static_cast<std::uint64_t>(trial));
    CHECK(lp_norm(f, 2, *ctx2).value <= lp_norm(f, 4, *ctx2).value + 1e-12);
  }
}

TEST_CASE("lp_norm: Monte Carlo path against the exact multiplication oracle") {
  auto ctx = GramContext::build(3, 2);
  for (std::uint64_t seed : {800ull, 801ull}) {
    const HomogeneousPoly f = testutil::random_poly(3, 2, seed);
    // Exact sixth-power integral via f^3 paired with itself.
    const HomogeneousPoly f3 = f * f * f;
    const double exact = std::pow(sphere_integral(f3 * f3), 1.0 / 6.0);
    const LpEstimate mc = lp_norm(f, 6, *ctx, seed, 200000);
    CHECK(std::abs(mc.value - exact) < 3.0 * mc.std_error + 1e-9);
    CHECK(mc.std_error > 0.0);
  }
}

TEST_CASE("Barvinok inequality on sampled mean-zero forms") {
  auto ctx = GramContext::build(3, 2);
  const MBasis basis = MBasis::build(ctx);
  const SampleBatch batch = sample_sm(basis, 100, 11);
  const double factor = barvinok_factor(3, 1);
  OptimizerConfig cfg = quick_cfg(12);
  int violations = 0;
  for (long i = 0; i < batch.count(); ++i) {
    const HomogeneousPoly f = basis.to_poly(batch.points.row(i).transpose());
    const double linf = linf_norm(f, cfg).value;
    const LpEstimate l6 = lp_norm(f, 6, *ctx, 13 + static_cast<std::uint64_t>(i), 20000);
    // The lp value is itself Monte Carlo; allow its three-sigma band.
    if (linf > factor * (l6.value + 3.0 * l6.std_error) + 1e-9) ++violations;
    CHECK(std::abs(min_on_sphere(f, cfg).value) <= linf + 1e-12);
  }
  CHECK(violations == 0);
}

TEST_CASE("Jensen and Hoelder links hold on sampled gauges") {
  auto ctx = GramContext::build(3, 2);
  const MBasis basis = MBasis::build(ctx);
  const SampleBatch batch = sample_sm(basis, 100, 21);
  OptimizerConfig cfg = quick_cfg(22);
  std::vector<double> gauges;
  for (long i = 0; i < batch.count(); ++i)
    gauges.push_back(gauge_c(basis.to_poly(batch.points.row(i).transpose()), cfg));
  double mean_g = 0.0, mean_inv = 0.0;
  for (double g : gauges) {
    mean_g += g;
    mean_inv += 1.0 / g;
  }
  mean_g /= static_cast<double>(gauges.size());
  mean_inv /= static_cast<double>(gauges.size());
  // Jensen on the empirical measure.
  CHECK(mean_inv + 1e-12 >= 1.0 / mean_g);
  // Power-mean (Hoelder) link: ||G^{-1}||_{D_M} >= ||G^{-1}||_1, empirically.
  const int dm = basis.dim();
  double mean_pow = 0.0;
  for (double g : gauges) mean_pow += std::pow(g, -dm);
  mean_pow /= static_cast<double>(gauges.size());
  CHECK(std::pow(mean_pow, 1.0 / dm) + 1e-12 >= mean_inv);
}
