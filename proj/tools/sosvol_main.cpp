// Command-line interface: every operation is exposed as a batch subcommand
// with reproducible seeds. Exit codes: 0 success or affirmative decision,
// 1 negative decision, 2 usage or input error, 3 numerical failure,
// 4 undecided.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sosvol/estimators.hpp"
#include "sosvol/kernel.hpp"
#include "sosvol/moments.hpp"
#include "sosvol/poly_io.hpp"

namespace {

using namespace sosvol;

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUndecided = 4;

struct ToleranceSet {
  double step = 1e-12;
  double value = 1e-10;
  double sos_feas = 1e-7;
  double gauge = 1e-4;
};

void apply_tolerances(const std::vector<std::string>& entries, ToleranceSet& tols) {
  for (const auto& entry : entries) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("tolerance must be name=value: " + entry);
    const std::string name = entry.substr(0, eq);
    const double v = std::stod(entry.substr(eq + 1));
    if (v <= 0.0) throw std::invalid_argument("tolerance must be positive: " + entry);
    if (name == "step")
      tols.step = v;
    else if (name == "value")
      tols.value = v;
    else if (name == "sos_feas")
      tols.sos_feas = v;
    else if (name == "gauge")
      tols.gauge = v;
    else
      throw std::invalid_argument("unknown tolerance name: " + name);
  }
}

// Flat key=value config file ('#' starts a comment). Keys mirror the report
// flags; values given on the command line win.
std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return kv;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + out_path);
  os << text;
}

void note_seed(std::uint64_t seed) {
  std::fprintf(stderr, "seed: %" PRIu64 "\n", seed);
}

int run_moments(int n, int degree, const std::string& format, const std::string& out) {
  const auto& basis = MonomialBasis::get(n, degree);
  std::string text;
  if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& alpha : basis.indices()) {
      const Rational m = sphere_moment(alpha, n);
      rows.push_back({{"exps", alpha.exponents},
                      {"moment", to_string(m)},
                      {"value", to_double(m)}});
    }
    text = rows.dump(2) + "\n";
  } else {
    std::string buf = "exps,moment,value\n";
    char num[40];
    for (const auto& alpha : basis.indices()) {
      for (int i = 0; i < n; ++i) {
        if (i) buf += ' ';
        buf += std::to_string(alpha[i]);
      }
      const Rational m = sphere_moment(alpha, n);
      buf += ',' + to_string(m) + ',';
      std::snprintf(num, sizeof(num), "%.17g", to_double(m));
      buf += num;
      buf += '\n';
    }
    text = std::move(buf);
  }
  emit(text, out);
  return 0;
}

int run_sample(int n, int k, long count, std::uint64_t seed, int threads,
               const std::string& out) {
  note_seed(seed);
  const MBasis basis = MBasis::build(GramContext::build(n, 2 * k));
  const SampleBatch batch = sample_sm(basis, count, seed, threads);
  std::ostringstream os;
  write_batch_csv(os, batch, n, k);
  emit(os.str(), out);
  return 0;
}

int run_extreme(const std::string& poly_path, const OptimizerConfig& cfg, bool linf,
                const std::string& out) {
  note_seed(cfg.seed);
  const HomogeneousPoly f = read_poly_file(poly_path);
  const ExtremeResult r = linf ? linf_norm(f, cfg) : min_on_sphere(f, cfg);
  emit(extreme_result_to_json(r), out);
  return r.starts_converged == 0 ? kExitNumerical : 0;
}

int run_gauge_c(const std::string& poly_path, const OptimizerConfig& cfg,
                const std::string& out) {
  note_seed(cfg.seed);
  const HomogeneousPoly f = read_poly_file(poly_path);
  const double g = gauge_c(f, cfg);
  nlohmann::ordered_json j{{"value", g}};
  emit(j.dump(2) + "\n", out);
  return 0;
}

int run_hf(const std::string& poly_path, bool eigs_only, const std::string& out) {
  const HomogeneousPoly f = read_poly_file(poly_path);
  if (f.degree() % 2 != 0)
    throw std::invalid_argument("hf requires an even-degree polynomial");
  auto ctx2k = GramContext::build(f.nvars(), f.degree());
  auto ctxk = GramContext::build(f.nvars(), f.degree() / 2);
  const SymmetricForm h = hf_matrix(f, *ctx2k, *ctxk);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on H_f");
  nlohmann::ordered_json j;
  j["dim"] = h.dim();
  if (eigs_only) {
    j["eigenvalues"] = std::vector<double>(
        es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  } else {
    j["sq_norm"] = es.eigenvalues().cwiseAbs().maxCoeff();
    j["support_sq"] = es.eigenvalues().maxCoeff();
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

int run_sos_check(const std::string& poly_path, const SosOptions& opts,
                  const std::string& out) {
  const HomogeneousPoly f = read_poly_file(poly_path);
  const SosDecision d = is_sos(f, opts);
  emit(sos_decision_to_json(d), out);
  switch (d.status) {
    case SosStatus::sos: return 0;
    case SosStatus::not_sos: return kExitNegative;
    case SosStatus::undecided: return kExitUndecided;
  }
  return kExitNumerical;
}

int run_gauge_sq(const std::string& poly_path, double rel_tol,
                 const OptimizerConfig& cfg, const SosOptions& opts,
                 const std::string& out) {
  note_seed(cfg.seed);
  const HomogeneousPoly f = read_poly_file(poly_path);
  if (f.degree() % 2 != 0)
    throw std::invalid_argument("gauge-sq requires an even-degree polynomial");
  auto ctx2k = GramContext::build(f.nvars(), f.degree());
  auto ctxk = GramContext::build(f.nvars(), f.degree() / 2);
  const GaugeSqResult r = gauge_sq(f, *ctx2k, *ctxk, rel_tol, cfg, opts);
  nlohmann::ordered_json j;
  j["value"] = r.value;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["status"] = r.status == SosStatus::sos ? "ok" : "undecided";
  j["probes"] = r.probes;
  emit(j.dump(2) + "\n", out);
  return r.status == SosStatus::sos ? 0 : kExitUndecided;
}

int run_report(int n, int k, long samples, std::uint64_t seed,
               const OptimizerConfig& cfg, int threads, const std::string& format,
               const std::string& out) {
  note_seed(seed);
  const BoundReport rep = chain_report(n, k, samples, seed, cfg, threads);
  if (format == "csv") {
    std::ostringstream os;
    report_to_csv(os, rep);
    emit(os.str(), out);
  } else {
    emit(report_to_json(rep), out);
  }
  return 0;
}

int run_verify_bounds(int max_n, int max_k) {
  int failures = 0;
  auto check = [&](bool ok, const std::string& label) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", label.c_str());
    if (!ok) ++failures;
  };
  bool ok = true;
  for (int k = 1; k <= max_k; ++k)
    for (int n = 1; n <= std::min(max_n, 100); ++n) {
      const double lhs = thm21_bound(n, k) / thm22_bound(n, k);
      const double rhs = cor23_constant(k) * std::pow(static_cast<double>(n), 0.5 * (k - 1));
      ok = ok && std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs);
    }
  check(ok, "corollary identity thm21/thm22 = c(k) n^{(k-1)/2}");
  check(cor23_constant(1) == 1.0 / 768.0, "c(1) = 1/768 exactly");
  ok = true;
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= max_k; ++k)
      ok = ok && barvinok_factor(n, k) <= 2.0 * std::sqrt(2.0 * k + 1.0);
  check(ok, "barvinok factor within the Stirling cap");
  ok = true;
  for (int d = 1; d <= 100; ++d)
    ok = ok && std::abs(pairing_moment(d, 1) - 1.0 / d) <= 1e-12 / d;
  check(ok, "pairing moment (D,1) = 1/D");
  ok = true;
  for (int m = 1; m <= 30; ++m) {
    for (int d = 2; d <= 500; ++d) {
      const double lhs = std::exp((std::lgamma(0.5 * d) - std::lgamma(0.5 * d + m)) / (2.0 * m));
      ok = ok && lhs <= std::sqrt(2.0 / d) + 1e-12;
    }
    ok = ok && std::exp((std::lgamma(m + 0.5) - 0.5 * std::log(M_PI)) / (2.0 * m)) <=
                   std::sqrt(static_cast<double>(m)) + 1e-12;
  }
  check(ok, "gamma ratio inequalities");
  return failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauges, support functions and volume bounds for the bases of "
               "the nonnegative and sums-of-squares cones"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker cap; output is identical for any value (0 = hardware)");

  int n = 3, k = 1, degree = 2;
  long samples = 500, count = 100;
  std::uint64_t seed = 1;
  int starts = 0, max_iters = 500;
  long sos_iters = 20000;
  std::string poly_path, out_path, format = "json";
  std::vector<std::string> tol_entries;

  auto* moments = app.add_subcommand("moments", "Exact sphere moments of all monomials");
  moments->add_option("--n", n, "Number of variables")->required();
  moments->add_option("--degree", degree, "Monomial degree")->required();
  moments->add_option("--format", format, "json or csv");
  moments->add_option("--out", out_path, "Output file (default stdout)");

  auto* sample = app.add_subcommand("sample", "Uniform samples on the unit sphere of M");
  sample->add_option("--n", n)->required();
  sample->add_option("--k", k)->required();
  sample->add_option("--count", count, "Number of samples");
  sample->add_option("--seed", seed);
  sample->add_option("--out", out_path);

  auto add_opt_flags = [&](CLI::App* cmd) {
    cmd->add_option("--poly", poly_path, "Polynomial JSON file")->required();
    cmd->add_option("--starts", starts, "Multistart count (0 = 60n)");
    cmd->add_option("--seed", seed);
    cmd->add_option("--max-iters", max_iters);
    cmd->add_option("--tol", tol_entries, "name=value (step, value, sos_feas, gauge)");
    cmd->add_option("--out", out_path);
  };
  auto* min_sphere = app.add_subcommand("min-sphere", "Minimum of a form on the sphere");
  add_opt_flags(min_sphere);
  auto* linf = app.add_subcommand("linf", "Sup norm of a form on the sphere");
  add_opt_flags(linf);
  auto* gaugec = app.add_subcommand("gauge-c", "Gauge of the nonnegative base");
  add_opt_flags(gaugec);

  auto* hf_eigs = app.add_subcommand("hf-eigs", "Eigenvalues of the quadratic form H_f");
  hf_eigs->add_option("--poly", poly_path)->required();
  hf_eigs->add_option("--out", out_path);
  auto* sqn = app.add_subcommand("sq-norm", "sq norm and SOS support function of a form");
  sqn->add_option("--poly", poly_path)->required();
  sqn->add_option("--out", out_path);

  auto* sos_check = app.add_subcommand("sos-check", "Decide sum-of-squares membership");
  sos_check->add_option("--poly", poly_path)->required();
  sos_check->add_option("--max-iters", sos_iters);
  sos_check->add_option("--tol", tol_entries);
  sos_check->add_option("--out", out_path);

  auto* gauge_sq_cmd = app.add_subcommand("gauge-sq", "Gauge of the SOS base by bisection");
  add_opt_flags(gauge_sq_cmd);
  gauge_sq_cmd->add_option("--sos-max-iters", sos_iters);

  auto* report = app.add_subcommand("report", "Bound report over a sampled batch");
  std::string config_path;
  auto* opt_n = report->add_option("--n", n);
  auto* opt_k = report->add_option("--k", k);
  auto* opt_samples = report->add_option("--samples", samples);
  auto* opt_seed = report->add_option("--seed", seed);
  auto* opt_starts = report->add_option("--starts", starts);
  report->add_option("--tol", tol_entries);
  auto* opt_format = report->add_option("--format", format, "json or csv");
  auto* opt_out = report->add_option("--out", out_path);
  report->add_option("--config", config_path,
                     "Flat key=value config file; flags override it");

  auto* verify = app.add_subcommand("verify-bounds", "Closed-form identity checks");
  int vmax_n = 200, vmax_k = 10;
  verify->add_option("--max-n", vmax_n);
  verify->add_option("--max-k", vmax_k);

  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (report->parsed()) {
      // Merge config-file values under the flags.
      const auto kv = read_flat_config(config_path);
      for (const auto& [key, value] : kv) {
        if (key == "n" && opt_n->count() == 0)
          n = std::stoi(value);
        else if (key == "k" && opt_k->count() == 0)
          k = std::stoi(value);
        else if (key == "samples" && opt_samples->count() == 0)
          samples = std::stol(value);
        else if (key == "seed" && opt_seed->count() == 0)
          seed = std::stoull(value);
        else if (key == "starts" && opt_starts->count() == 0)
          starts = std::stoi(value);
        else if (key == "format" && opt_format->count() == 0)
          format = value;
        else if (key == "output_path" && opt_out->count() == 0)
          out_path = value;
        else if (key == "step" || key == "value" || key == "sos_feas" || key == "gauge")
          tol_entries.insert(tol_entries.begin(), key + "=" + value);
        else if (key == "n" || key == "k" || key == "samples" || key == "seed" ||
                 key == "starts" || key == "format" || key == "output_path") {
          // flag given on the command line wins; ignore the config entry
        } else {
          throw std::invalid_argument("unknown config key: " + key);
        }
      }
      if (opt_n->count() == 0 && kv.find("n") == kv.end())
        throw std::invalid_argument("report: --n required (flag or config)");
      if (opt_k->count() == 0 && kv.find("k") == kv.end())
        throw std::invalid_argument("report: --k required (flag or config)");
    }
    ToleranceSet tols;
    apply_tolerances(tol_entries, tols);
    OptimizerConfig cfg;
    cfg.starts = starts;
    cfg.max_iters = max_iters;
    cfg.step_tolerance = tols.step;
    cfg.value_tolerance = tols.value;
    cfg.seed = seed;
    cfg.threads = threads;
    SosOptions sos_opts;
    sos_opts.max_iterations = sos_iters;
    sos_opts.feas_tolerance = tols.sos_feas;

    if (moments->parsed()) return run_moments(n, degree, format, out_path);
    if (sample->parsed()) return run_sample(n, k, count, seed, threads, out_path);
    if (min_sphere->parsed()) return run_extreme(poly_path, cfg, false, out_path);
    if (linf->parsed()) return run_extreme(poly_path, cfg, true, out_path);
    if (gaugec->parsed()) return run_gauge_c(poly_path, cfg, out_path);
    if (hf_eigs->parsed()) return run_hf(poly_path, true, out_path);
    if (sqn->parsed()) return run_hf(poly_path, false, out_path);
    if (sos_check->parsed()) return run_sos_check(poly_path, sos_opts, out_path);
    if (gauge_sq_cmd->parsed())
      return run_gauge_sq(poly_path, tols.gauge, cfg, sos_opts, out_path);
    if (report->parsed())
      return run_report(n, k, samples, seed, cfg, threads, format, out_path);
    if (verify->parsed()) return run_verify_bounds(vmax_n, vmax_k);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
