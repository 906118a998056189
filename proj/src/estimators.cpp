#include "sosvol/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sosvol/parallel.hpp"
#include "sosvol/rng.hpp"

namespace sosvol {

namespace {

Estimate direct_estimate(std::span<const double> vals) {
  Estimate e;
  e.count = static_cast<long>(vals.size());
  if (vals.empty()) throw std::invalid_argument("estimate: empty sample");
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  if (vals.size() > 1) var /= static_cast<double>(vals.size() - 1);
  e.mean = mean;
  e.std_error = std::sqrt(var / static_cast<double>(vals.size()));
  return e;
}

// 1/mean with first-order error propagation.
Estimate inverted(const Estimate& in) {
  Estimate e = in;
  e.mean = 1.0 / in.mean;
  e.std_error = in.std_error / (in.mean * in.mean);
  return e;
}

// Optimizer seed for one sample; the stream offset keeps these apart from the
// batch-sampling streams.
std::uint64_t sample_opt_seed(std::uint64_t seed, long index) {
  return CounterRng(seed, (1ull << 32) + static_cast<std::uint64_t>(index)).next_u64();
}

double factorial_d(int m) {
  double r = 1.0;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

char const* bool_cell(bool b) { return b ? "1" : "0"; }

}  // namespace

double thm21_bound(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("thm21_bound: need n, k >= 1");
  return 0.5 / std::sqrt((4.0 * k + 2.0) * n);
}

double thm22_bound(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("thm22_bound: need n, k >= 1");
  const double lead =
      std::pow(4.0, 2 * k) * factorial_d(2 * k) * std::sqrt(24.0) / factorial_d(k);
  return lead * std::pow(static_cast<double>(n), -0.5 * k);
}

double cor23_constant(int k) {
  if (k < 1) throw std::invalid_argument("cor23_constant: need k >= 1");
  return factorial_d(k) /
         (2.0 * factorial_d(2 * k) * std::pow(4.0, 2 * k) *
          std::sqrt(24.0 * (4.0 * k + 2.0)));
}

double avg_linf_bound(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("avg_linf_bound: need n, k >= 1");
  return 2.0 * std::sqrt(2.0 * n * (2.0 * k + 1.0));
}

AvgLinfResult avg_linf(const SampleBatch& batch, const MBasis& basis,
                       const OptimizerConfig& cfg) {
  const long count = batch.count();
  if (count < 1) throw std::invalid_argument("avg_linf: empty batch");
  std::vector<double> vals(static_cast<std::size_t>(count));
  std::vector<char> failed(static_cast<std::size_t>(count), 0);
  parallel_for(count, cfg.threads, [&](long i) {
    OptimizerConfig local = cfg;
    local.seed = sample_opt_seed(cfg.seed, i);
    local.threads = 1;
    const HomogeneousPoly f = basis.to_poly(batch.points.row(i).transpose());
    const ExtremeResult r = linf_norm(f, local);
    vals[static_cast<std::size_t>(i)] = r.value;
    failed[static_cast<std::size_t>(i)] = r.starts_converged == 0 ? 1 : 0;
  });
  AvgLinfResult out;
  out.estimate = direct_estimate(vals);
  for (char c : failed) out.optimizer_failures += c;
  return out;
}

Estimate avg_sq_norm(const SampleBatch& batch, const MBasis& basis,
                     const HfBuilder& builder, int threads) {
  const long count = batch.count();
  if (count < 1) throw std::invalid_argument("avg_sq_norm: empty batch");
  std::vector<double> vals(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](long i) {
    const HomogeneousPoly f = basis.to_poly(batch.points.row(i).transpose());
    vals[static_cast<std::size_t>(i)] = sq_norm(builder.build(f));
  });
  return direct_estimate(vals);
}

Estimate mean_width_sq(const SampleBatch& batch, const MBasis& basis,
                       const HfBuilder& builder, int threads) {
  const long count = batch.count();
  if (count < 1) throw std::invalid_argument("mean_width_sq: empty batch");
  std::vector<double> vals(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](long i) {
    const HomogeneousPoly f = basis.to_poly(batch.points.row(i).transpose());
    vals[static_cast<std::size_t>(i)] = 2.0 * support_sq(builder.build(f));
  });
  return direct_estimate(vals);
}

Estimate vol_ratio_from_gauge(std::span<const double> gauges, int D) {
  if (D < 1) throw std::invalid_argument("vol_ratio_from_gauge: need D >= 1");
  if (gauges.empty()) throw std::invalid_argument("vol_ratio_from_gauge: empty input");
  for (double g : gauges)
    if (!(g > 0.0))
      throw std::invalid_argument("vol_ratio_from_gauge: gauges must be positive");
  const long count = static_cast<long>(gauges.size());
  const int blocks = static_cast<int>(std::min<long>(16, count));
  std::vector<double> block_est(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    const long lo = count * b / blocks;
    const long hi = count * (b + 1) / blocks;
    // log-sum-exp of -D log(g) over the block
    double m = -std::numeric_limits<double>::infinity();
    for (long i = lo; i < hi; ++i)
      m = std::max(m, -D * std::log(gauges[static_cast<std::size_t>(i)]));
    double s = 0.0;
    for (long i = lo; i < hi; ++i)
      s += std::exp(-D * std::log(gauges[static_cast<std::size_t>(i)]) - m);
    const double lse = m + std::log(s / static_cast<double>(hi - lo));
    block_est[static_cast<std::size_t>(b)] = std::exp(lse / D);
  }
  std::vector<double> sorted = block_est;
  std::sort(sorted.begin(), sorted.end());
  Estimate e;
  e.count = count;
  e.method = "median-of-means";
  e.mean = (blocks % 2 == 1)
               ? sorted[static_cast<std::size_t>(blocks / 2)]
               : 0.5 * (sorted[static_cast<std::size_t>(blocks / 2 - 1)] +
                        sorted[static_cast<std::size_t>(blocks / 2)]);
  double bm = 0.0;
  for (double v : block_est) bm += v;
  bm /= blocks;
  double bv = 0.0;
  for (double v : block_est) bv += (v - bm) * (v - bm);
  if (blocks > 1) bv /= (blocks - 1);
  // Asymptotic standard error of a median of `blocks` means.
  e.std_error = 1.2533 * std::sqrt(bv / blocks);
  return e;
}

BoundReport chain_report(int n, int k, long samples, std::uint64_t seed,
                         const OptimizerConfig& cfg, int threads) {
  if (samples < 2) throw std::invalid_argument("chain_report: need samples >= 2");
  auto ctx2k = GramContext::build(n, 2 * k);
  auto ctxk = GramContext::build(n, k);
  const MBasis basis = MBasis::build(ctx2k);
  const HfBuilder builder(ctx2k, ctxk);
  const SampleBatch batch = sample_sm(basis, samples, seed, threads);
  const int dm = basis.dim();

  std::vector<double> gauge(static_cast<std::size_t>(samples));
  std::vector<double> linf(static_cast<std::size_t>(samples));
  std::vector<double> support(static_cast<std::size_t>(samples));
  std::vector<double> sqn(static_cast<std::size_t>(samples));
  std::vector<double> inv_gauge(static_cast<std::size_t>(samples));
  std::vector<char> failed(static_cast<std::size_t>(samples), 0);
  std::vector<double> gauge_sq_diff(static_cast<std::size_t>(samples), 0.0);

  parallel_for(samples, threads, [&](long i) {
    OptimizerConfig local = cfg;
    local.seed = sample_opt_seed(cfg.seed, i);
    local.threads = 1;
    const HomogeneousPoly f = basis.to_poly(batch.points.row(i).transpose());
    const ExtremeResult lo = min_on_sphere(f, local);
    const ExtremeResult hi = min_on_sphere(f * -1.0, local);
    gauge[static_cast<std::size_t>(i)] = std::abs(lo.value);
    linf[static_cast<std::size_t>(i)] =
        std::max(std::abs(lo.value), std::abs(hi.value));
    inv_gauge[static_cast<std::size_t>(i)] = 1.0 / std::abs(lo.value);
    failed[static_cast<std::size_t>(i)] =
        (lo.starts_converged == 0 || hi.starts_converged == 0) ? 1 : 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(builder.build(f).matrix,
                                                      Eigen::EigenvaluesOnly);
    support[static_cast<std::size_t>(i)] = es.eigenvalues().maxCoeff();
    sqn[static_cast<std::size_t>(i)] = es.eigenvalues().cwiseAbs().maxCoeff();
    if (k == 1) {
      const GaugeSqResult gs = gauge_sq(f, *ctx2k, *ctxk, 1e-5, local, SosOptions{},
                                        gauge[static_cast<std::size_t>(i)]);
      gauge_sq_diff[static_cast<std::size_t>(i)] =
          gs.status == SosStatus::sos
              ? std::abs(gs.value - gauge[static_cast<std::size_t>(i)])
              : std::numeric_limits<double>::infinity();
    }
  });

  BoundReport rep;
  rep.n = n;
  rep.k = k;
  rep.samples = samples;
  rep.seed = seed;
  rep.avg_linf = direct_estimate(linf);
  rep.avg_sq_norm = direct_estimate(sqn);
  Estimate half_width = direct_estimate(support);
  rep.mean_width_sq = half_width;
  rep.mean_width_sq.mean *= 2.0;
  rep.mean_width_sq.std_error *= 2.0;
  rep.vol_c_direct = vol_ratio_from_gauge(gauge, dm);
  rep.vol_c_holder_l1 = direct_estimate(inv_gauge);
  rep.vol_c_jensen = inverted(direct_estimate(gauge));
  rep.vol_c_linf_proxy = inverted(rep.avg_linf);
  rep.vol_sq_upper = half_width;
  rep.thm21_rhs = thm21_bound(n, k);
  rep.thm22_rhs = thm22_bound(n, k);
  rep.thm32_rhs = avg_linf_bound(n, k);
  rep.thm41_rhs = thm22_bound(n, k);
  rep.cor23_rhs = cor23_constant(k) * std::pow(static_cast<double>(n), 0.5 * (k - 1));
  for (char c : failed) rep.optimizer_failures += c;

  auto comb = [](const Estimate& a, const Estimate& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  };
  bool min_le_linf = true, sup_le_sqn = true;
  for (long i = 0; i < samples; ++i) {
    if (gauge[static_cast<std::size_t>(i)] > linf[static_cast<std::size_t>(i)] + 1e-12)
      min_le_linf = false;
    if (support[static_cast<std::size_t>(i)] > sqn[static_cast<std::size_t>(i)] + 1e-12)
      sup_le_sqn = false;
  }
  rep.pass_flags["samplewise_min_le_linf"] = min_le_linf;
  rep.pass_flags["samplewise_support_le_sq_norm"] = sup_le_sqn;
  rep.pass_flags["chain_direct_ge_holder"] =
      rep.vol_c_direct.mean >=
      rep.vol_c_holder_l1.mean - 3.0 * comb(rep.vol_c_direct, rep.vol_c_holder_l1);
  rep.pass_flags["chain_holder_ge_jensen"] =
      rep.vol_c_holder_l1.mean >=
      rep.vol_c_jensen.mean - 3.0 * comb(rep.vol_c_holder_l1, rep.vol_c_jensen);
  rep.pass_flags["chain_jensen_ge_linf_proxy"] =
      rep.vol_c_jensen.mean >=
      rep.vol_c_linf_proxy.mean - 3.0 * comb(rep.vol_c_jensen, rep.vol_c_linf_proxy);
  rep.pass_flags["thm21_vs_linf_proxy"] =
      rep.vol_c_linf_proxy.mean >= rep.thm21_rhs - 3.0 * rep.vol_c_linf_proxy.std_error;
  rep.pass_flags["thm21_vs_direct"] =
      rep.vol_c_direct.mean >= rep.thm21_rhs - 3.0 * rep.vol_c_direct.std_error;
  rep.pass_flags["thm32_avg_linf"] =
      rep.avg_linf.mean <= rep.thm32_rhs + 3.0 * rep.avg_linf.std_error;
  rep.pass_flags["thm41_avg_sq_norm"] =
      rep.avg_sq_norm.mean <= rep.thm41_rhs + 3.0 * rep.avg_sq_norm.std_error;
  rep.pass_flags["width_le_avg_sq_norm"] =
      rep.vol_sq_upper.mean <=
      rep.avg_sq_norm.mean + 3.0 * comb(rep.vol_sq_upper, rep.avg_sq_norm);
  rep.pass_flags["thm22_width"] =
      rep.vol_sq_upper.mean <= rep.thm22_rhs + 3.0 * rep.vol_sq_upper.std_error;
  if (k == 1) {
    rep.pass_flags["urysohn_vol_le_width"] =
        rep.vol_c_direct.mean <=
        rep.vol_sq_upper.mean + 3.0 * comb(rep.vol_c_direct, rep.vol_sq_upper);
    double max_diff = 0.0;
    for (double d : gauge_sq_diff) max_diff = std::max(max_diff, d);
    rep.hilbert_gauge_max_diff = max_diff;
    rep.pass_flags["hilbert_gauge_match"] = max_diff <= 1e-4;
  }

  rep.notes.push_back(
      "linf and gauge values come from multistart local optimization and are "
      "lower bounds on the true sup norms; every bound comparison is stated in "
      "the direction that stays valid under a lower bound.");
  if (rep.thm22_rhs > 1.0)
    rep.notes.push_back("thm22 RHS exceeds 1 at this (n,k): volume comparison "
                        "is vacuous (bound not tight at small n).");
  return rep;
}

namespace {

nlohmann::ordered_json estimate_json(const Estimate& e) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"count", e.count},
          {"method", e.method}};
}

}  // namespace

std::string report_to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["avg_linf"] = estimate_json(r.avg_linf);
  j["avg_sq_norm"] = estimate_json(r.avg_sq_norm);
  j["mean_width_sq"] = estimate_json(r.mean_width_sq);
  j["vol_c_lower_chain"] = {{"direct", estimate_json(r.vol_c_direct)},
                            {"holder_l1", estimate_json(r.vol_c_holder_l1)},
                            {"jensen", estimate_json(r.vol_c_jensen)},
                            {"linf_proxy", estimate_json(r.vol_c_linf_proxy)}};
  j["vol_sq_upper"] = estimate_json(r.vol_sq_upper);
  j["bounds"] = {{"thm21_rhs", r.thm21_rhs},
                 {"thm22_rhs", r.thm22_rhs},
                 {"thm32_rhs", r.thm32_rhs},
                 {"thm41_rhs", r.thm41_rhs},
                 {"cor23_rhs", r.cor23_rhs}};
  j["pass_flags"] = r.pass_flags;
  j["optimizer_failures"] = r.optimizer_failures;
  if (r.hilbert_gauge_max_diff >= 0.0)
    j["hilbert_gauge_max_diff"] = r.hilbert_gauge_max_diff;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

void report_to_csv(std::ostream& os, const BoundReport& r) {
  os << "n,k,quantity,estimate,std_error,bound,pass\n";
  char buf[256];
  auto row = [&](const char* quantity, double est, double se, double bound,
                 const char* pass) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%s,%.17g,%.17g,", r.n, r.k, quantity, est, se);
    os << buf;
    if (std::isfinite(bound)) {
      std::snprintf(buf, sizeof(buf), "%.17g", bound);
      os << buf;
    }
    os << ',' << pass << '\n';
  };
  const double none = std::numeric_limits<double>::quiet_NaN();
  auto flag = [&](const char* name) {
    auto it = r.pass_flags.find(name);
    return it == r.pass_flags.end() ? "" : bool_cell(it->second);
  };
  row("avg_linf", r.avg_linf.mean, r.avg_linf.std_error, r.thm32_rhs, flag("thm32_avg_linf"));
  row("avg_sq_norm", r.avg_sq_norm.mean, r.avg_sq_norm.std_error, r.thm41_rhs,
      flag("thm41_avg_sq_norm"));
  row("mean_width_sq", r.mean_width_sq.mean, r.mean_width_sq.std_error, none, "");
  row("vol_sq_upper", r.vol_sq_upper.mean, r.vol_sq_upper.std_error, r.thm22_rhs,
      flag("thm22_width"));
  row("vol_c_direct", r.vol_c_direct.mean, r.vol_c_direct.std_error, r.thm21_rhs,
      flag("thm21_vs_direct"));
  row("vol_c_holder_l1", r.vol_c_holder_l1.mean, r.vol_c_holder_l1.std_error, none,
      flag("chain_direct_ge_holder"));
  row("vol_c_jensen", r.vol_c_jensen.mean, r.vol_c_jensen.std_error, none,
      flag("chain_holder_ge_jensen"));
  row("vol_c_linf_proxy", r.vol_c_linf_proxy.mean, r.vol_c_linf_proxy.std_error,
      r.thm21_rhs, flag("thm21_vs_linf_proxy"));
  if (r.hilbert_gauge_max_diff >= 0.0)
    row("hilbert_gauge_max_diff", r.hilbert_gauge_max_diff, 0.0, 1e-4,
        flag("hilbert_gauge_match"));
  row("thm21_rhs", r.thm21_rhs, 0.0, none, "");
  row("thm22_rhs", r.thm22_rhs, 0.0, none, "");
  row("thm32_rhs", r.thm32_rhs, 0.0, none, "");
  row("cor23_rhs", r.cor23_rhs, 0.0, none, "");
}

}  // namespace sosvol
