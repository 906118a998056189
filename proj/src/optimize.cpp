#include "sosvol/optimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sosvol/parallel.hpp"
#include "sosvol/rng.hpp"

namespace sosvol {

namespace {

struct StartOutcome {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> point;
  bool converged = false;
};

// One projected-gradient descent on the sphere: x <- normalize(x - eta * g_tan)
// with Armijo backtracking on the tangential gradient.
StartOutcome descend(const HomogeneousPoly& f, std::vector<double> x,
                     const OptimizerConfig& cfg) {
  const int n = f.nvars();
  std::vector<double> grad(static_cast<std::size_t>(n));
  std::vector<double> trial(static_cast<std::size_t>(n));
  double fx = f.evaluate(x);
  double eta = 0.1;
  int stall = 0;
  StartOutcome out;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    f.eval_gradient(x, grad);
    // Tangential component; the radial part only rescales on the sphere.
    double radial = 0.0;
    for (int i = 0; i < n; ++i) radial += grad[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    double gnorm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      grad[static_cast<std::size_t>(i)] -= radial * x[static_cast<std::size_t>(i)];
      gnorm2 += grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(i)];
    }
    const double gnorm = std::sqrt(gnorm2);
    if (gnorm <= 1e-15) {
      out.converged = true;
      break;
    }
    eta = std::min(eta * 2.0, 1e3);
    bool accepted = false;
    while (eta * gnorm > cfg.step_tolerance) {
      double norm2 = 0.0;
      for (int i = 0; i < n; ++i) {
        trial[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - eta * grad[static_cast<std::size_t>(i)];
        norm2 += trial[static_cast<std::size_t>(i)] * trial[static_cast<std::size_t>(i)];
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] *= inv;
      const double ft = f.evaluate(trial);
      if (ft <= fx - 1e-4 * eta * gnorm2) {
        const double drop = fx - ft;
        x = trial;
        fx = ft;
        accepted = true;
        if (drop <= cfg.value_tolerance * std::max(1.0, std::abs(fx)))
          ++stall;
        else
          stall = 0;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted || stall >= 5) {
      out.converged = true;
      break;
    }
  }
  out.value = fx;
  out.point = std::move(x);
  return out;
}

std::vector<double> random_unit_point(int n, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::vector<double> x(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = rng.next_gaussian();
      norm2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : x) v *= inv;
  return x;
}

}  // namespace

ExtremeResult min_on_sphere(const HomogeneousPoly& f, const OptimizerConfig& cfg) {
  if (f.degree() % 2 != 0)
    throw std::invalid_argument("min_on_sphere: degree must be even");
  const int n = f.nvars();
  const int starts = cfg.starts > 0 ? cfg.starts : 60 * n;
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(starts));
  parallel_for(starts, cfg.threads, [&](long s) {
    outcomes[static_cast<std::size_t>(s)] =
        descend(f, random_unit_point(n, cfg.seed, static_cast<std::uint64_t>(s)), cfg);
  });
  ExtremeResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    if (o.converged) ++best.starts_converged;
    if (o.value < best.value) {
      best.value = o.value;
      best.argpoint = o.point;
    }
  }
  // Re-evaluate so that value and argpoint agree exactly.
  best.value = f.evaluate(best.argpoint);
  return best;
}

ExtremeResult linf_norm(const HomogeneousPoly& f, const OptimizerConfig& cfg) {
  ExtremeResult lo = min_on_sphere(f, cfg);
  ExtremeResult hi = min_on_sphere(f * -1.0, cfg);
  ExtremeResult out;
  if (std::abs(lo.value) >= std::abs(hi.value)) {
    out = lo;
    out.value = std::abs(lo.value);
  } else {
    out = hi;
    out.value = std::abs(hi.value);
  }
  out.starts_converged = std::min(lo.starts_converged, hi.starts_converged);
  out.certified = false;
  return out;
}

double gauge_c(const HomogeneousPoly& f, const OptimizerConfig& cfg) {
  if (f.is_zero())
    throw std::invalid_argument("gauge_c: zero polynomial has no gauge direction");
  if (std::abs(sphere_integral(f)) > 1e-9)
    throw std::invalid_argument("gauge_c: polynomial must have sphere integral 0");
  return std::abs(min_on_sphere(f, cfg).value);
}

double barvinok_factor(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("barvinok_factor: need n, k >= 1");
  const double a = 2.0 * k * n + n;  // top = a - 1, bottom = 2kn
  const double log_binom =
      std::lgamma(a) - std::lgamma(2.0 * k * n + 1.0) - std::lgamma(static_cast<double>(n));
  return std::exp(log_binom / (2.0 * n));
}

LpEstimate lp_norm(const HomogeneousPoly& f, int p, const GramContext& ctx,
                   std::uint64_t mc_seed, long mc_points) {
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("lp_norm: p must be even and >= 2");
  if (f.nvars() != ctx.nvars() || f.degree() != ctx.degree())
    throw std::invalid_argument("lp_norm: polynomial shape mismatch");
  if (p <= 4) {
    const HomogeneousPoly h = (p == 2) ? f : f * f;
    const double integral = sphere_integral(h * h);
    return {integral <= 0.0 ? 0.0 : std::pow(integral, 1.0 / p), 0.0};
  }
  if (mc_points < 2) throw std::invalid_argument("lp_norm: need mc_points >= 2");
  const int n = f.nvars();
  std::vector<double> vals(static_cast<std::size_t>(mc_points));
  parallel_for(mc_points, 1, [&](long i) {
    const auto x = random_unit_point(n, mc_seed, static_cast<std::uint64_t>(i));
    vals[static_cast<std::size_t>(i)] = std::pow(f.evaluate(x), p);
  });
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(mc_points);
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= static_cast<double>(mc_points - 1);
  const double se_mean = std::sqrt(var / static_cast<double>(mc_points));
  const double value = mean <= 0.0 ? 0.0 : std::pow(mean, 1.0 / p);
  const double se = mean <= 0.0 ? 0.0 : se_mean * value / (p * mean);
  return {value, se};
}

}  // namespace sosvol
