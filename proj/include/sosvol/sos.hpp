#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sosvol/gram.hpp"
#include "sosvol/optimize.hpp"

namespace sosvol {

struct SosOptions {
  long max_iterations = 20000;
  double feas_tolerance = 1e-7;  // max coefficient mismatch for a certificate
  double psd_tolerance = 1e-9;   // eigenvalue floor for certificates/refutations
};

enum class SosStatus { sos, not_sos, undecided };

/// Witness of membership: a PSD matrix Q over the graded-lex monomial basis
/// of P_{n,k} with sum_ij Q_ij x^{alpha_i + alpha_j} = F up to `residual`.
struct SosCertificate {
  Eigen::MatrixXd gram;
  double residual = 0.0;
};

/// Witness of non-membership: a linear functional on P_{n,2k} (coefficients
/// over the graded-lex monomial basis) that is negative on F while its
/// moment matrix [L(x^{alpha_i} x^{alpha_j})] is PSD.
struct SosRefutation {
  std::vector<double> functional;
  double value_on_f = 0.0;
  double moment_matrix_min_eig = 0.0;
};

struct SosDecision {
  SosStatus status = SosStatus::undecided;
  std::optional<SosCertificate> certificate;
  std::optional<SosRefutation> refutation;
  long iterations = 0;
};

/// Decides F in Sq by alternating projections between the affine set of
/// coefficient-matching Gram matrices and the PSD cone, with Dykstra
/// correction on the cone side. Both witness kinds are checked by the
/// independent validators below before being returned; when neither passes,
/// the status is `undecided` rather than a guess.
SosDecision is_sos(const HomogeneousPoly& F, const SosOptions& opts = {});

/// Independent certificate check: rebuilds the coefficients of
/// sum Q_ij x^{alpha_i+alpha_j} from scratch and examines the spectrum of Q.
double certificate_residual(const HomogeneousPoly& F, const Eigen::MatrixXd& gram);
bool validate_certificate(const HomogeneousPoly& F, const SosCertificate& cert,
                          const SosOptions& opts = {});

/// Moment matrix [l_{alpha_i + alpha_j}] of a coefficient functional.
Eigen::MatrixXd moment_matrix(const std::vector<double>& functional, int n, int k);
bool validate_refutation(const HomogeneousPoly& F, const SosRefutation& ref,
                         double tol = 1e-9);

struct GaugeSqResult {
  double value = 0.0;
  double lower = 0.0;   // final bracket
  double upper = 0.0;
  SosStatus status = SosStatus::undecided;  // sos on success, undecided on abort
  long probes = 0;
};

/// Gauge of the SOS base: min{t > 0 : f/t + r^{2k} in Sq} by bisection on
/// is_sos. Valid because r^{2k} is interior to Sq (H_{r^{2k}} = I), so the
/// base is star-shaped about the origin. The initial bracket is
/// [max(|lambda_min(H_f)|, gauge_c), 10 * gauge_c], expanded geometrically if
/// the upper end is not yet feasible. An undecided probe aborts with the
/// bracket at that point. Pass a precomputed gauge_c value to skip the
/// internal multistart run.
GaugeSqResult gauge_sq(const HomogeneousPoly& f, const GramContext& ctx2k,
                       const GramContext& ctxk, double rel_tol = 1e-4,
                       const OptimizerConfig& cfg = {}, const SosOptions& sos = {},
                       double known_gauge_c = -1.0);

/// ||g^2||_2 = (||g||_4)^2 for a unit form g in P_{n,k}, exact through sphere
/// moments. Rejects g with | ||g||_2 - 1 | > 1e-9.
double l4_check(const HomogeneousPoly& g, const GramContext& ctx);

}  // namespace sosvol
