#pragma once

#include <cstdint>
#include <vector>

#include "sosvol/gram.hpp"
#include "sosvol/polynomial.hpp"

namespace sosvol {

struct OptimizerConfig {
  int starts = 0;  // 0 means the default 60 * nvars
  int max_iters = 500;
  double step_tolerance = 1e-12;
  double value_tolerance = 1e-10;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Outcome of a sphere optimization. The method is local, so the value is an
/// upper bound on the true minimum (equivalently, linf results are lower
/// bounds on the true sup norm); certified stays false.
struct ExtremeResult {
  double value = 0.0;
  std::vector<double> argpoint;
  int starts_converged = 0;
  bool certified = false;
};

/// Best local minimum of f over S^{n-1} found by projected gradient descent
/// with Armijo backtracking from `starts` random unit starts. Deterministic
/// in (seed, starts) and independent of thread count: the reduction keeps the
/// lowest value, ties broken by lowest start index.
ExtremeResult min_on_sphere(const HomogeneousPoly& f, const OptimizerConfig& cfg);

/// max(|min f|, |min -f|) over the sphere; a lower bound on ||f||_inf.
ExtremeResult linf_norm(const HomogeneousPoly& f, const OptimizerConfig& cfg);

/// Gauge of the nonnegative base: |min of f on S^{n-1}| for f in M.
/// Rejects polynomials whose sphere integral exceeds 1e-9 and the zero
/// polynomial.
double gauge_c(const HomogeneousPoly& f, const OptimizerConfig& cfg);

/// binomial(2kn+n-1, 2kn)^{1/(2n)} via log-Gamma.
double barvinok_factor(int n, int k);

struct LpEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero on the exact path
};

/// L^p norm of f on the sphere, even p only. Exact through sphere moments of
/// the expanded power for p <= 4; seeded Monte Carlo quadrature for larger p
/// (coefficient blowup makes the exact expansion a bad trade past p = 4).
LpEstimate lp_norm(const HomogeneousPoly& f, int p, const GramContext& ctx,
                   std::uint64_t mc_seed = 0x1234abcd, long mc_points = 1000000);

}  // namespace sosvol
