#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sosvol/hf_form.hpp"
#include "sosvol/m_basis.hpp"
#include "sosvol/optimize.hpp"
#include "sosvol/sos.hpp"

namespace sosvol {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  long count = 0;
  std::string method = "direct";  // direct | median-of-means | log-domain
};

/// Closed form of the volume lower bound for the nonnegative base:
/// (1 / (2 sqrt(4k+2))) * n^{-1/2}.
double thm21_bound(int n, int k);

/// Closed form of the volume upper bound for the SOS base:
/// (4^{2k} (2k)! sqrt(24) / k!) * n^{-k/2}.
double thm22_bound(int n, int k);

/// c(k) = k! / (2 (2k)! 4^{2k} sqrt(24 (4k+2))); the two bounds above satisfy
/// thm21/thm22 = c(k) * n^{(k-1)/2} as an algebraic identity.
double cor23_constant(int k);

/// RHS of the average sup-norm bound: 2 sqrt(2n(2k+1)).
double avg_linf_bound(int n, int k);

struct AvgLinfResult {
  Estimate estimate;
  int optimizer_failures = 0;  // samples where no start converged
};

/// Sample mean and standard error of the multistart sup-norm estimate over a
/// batch. Failures are counted, never silently dropped; a failed sample still
/// contributes its best value (a valid lower bound).
AvgLinfResult avg_linf(const SampleBatch& batch, const MBasis& basis,
                       const OptimizerConfig& cfg);

Estimate avg_sq_norm(const SampleBatch& batch, const MBasis& basis,
                     const HfBuilder& builder, int threads = 1);

/// Average width of the SOS base: 2 x sample mean of the support function.
Estimate mean_width_sq(const SampleBatch& batch, const MBasis& basis,
                       const HfBuilder& builder, int threads = 1);

/// Polar-coordinates volume estimator: (mean of G^{-D})^{1/D}, evaluated in
/// the log domain with median-of-means across 16 blocks to tame the heavy
/// tail of G^{-D}. The error is a block-spread measure, not a plain standard
/// error. Rejects nonpositive gauges.
Estimate vol_ratio_from_gauge(std::span<const double> gauges, int D);

struct BoundReport {
  int n = 0;
  int k = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  Estimate avg_linf;
  Estimate avg_sq_norm;
  Estimate mean_width_sq;  // the full width W
  // Links of the lower chain for (Vol C~ / Vol B_M)^{1/D_M}, strongest first.
  Estimate vol_c_direct;      // (mean G^{-D})^{1/D}, median-of-means
  Estimate vol_c_holder_l1;   // mean of G^{-1}
  Estimate vol_c_jensen;      // 1 / mean(G)
  Estimate vol_c_linf_proxy;  // 1 / mean(linf); the headline lower bound
  Estimate vol_sq_upper;      // W/2, the Urysohn upper bound on the SOS volume
  double thm21_rhs = 0.0;
  double thm22_rhs = 0.0;
  double thm32_rhs = 0.0;
  double thm41_rhs = 0.0;
  double cor23_rhs = 0.0;
  std::map<std::string, bool> pass_flags;
  std::vector<std::string> notes;
  int optimizer_failures = 0;
  double hilbert_gauge_max_diff = -1.0;  // k == 1 only; -1 when not applicable
};

/// Every averaged quantity on one shared batch, the closed-form bounds, and
/// pass flags for each inequality direction (3 combined standard errors of
/// slack for the expectation-level links).
BoundReport chain_report(int n, int k, long samples, std::uint64_t seed,
                         const OptimizerConfig& cfg, int threads = 1);

std::string report_to_json(const BoundReport& report);
void report_to_csv(std::ostream& os, const BoundReport& report);

}  // namespace sosvol
