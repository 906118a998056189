#include "sosvol/sos.hpp"

#include <cmath>
#include <stdexcept>

#include "sosvol/hf_form.hpp"

namespace sosvol {

namespace {

// Index table from monomial pairs of P_{n,k} into P_{n,2k}, plus the ordered
// pair count N_gamma hit by each target coefficient. Every degree-2k index
// splits into two degree-k halves, so N_gamma >= 1 throughout and the
// normal-equation matrix of the coefficient constraints is diagonal.
struct PairTable {
  const MonomialBasis* bk;
  const MonomialBasis* b2k;
  Eigen::MatrixXi pid;
  Eigen::VectorXd count;  // N_gamma

  PairTable(int n, int k) {
    bk = &MonomialBasis::get(n, k);
    b2k = &MonomialBasis::get(n, 2 * k);
    const int dk = static_cast<int>(bk->size());
    pid.resize(dk, dk);
    count = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b2k->size()));
    MultiIndex sum;
    sum.exponents.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j) {
        for (int v = 0; v < n; ++v) sum[v] = (*bk)[static_cast<std::size_t>(i)][v] + (*bk)[static_cast<std::size_t>(j)][v];
        const auto g = b2k->index_of(sum);
        pid(i, j) = static_cast<int>(g);
        count(g) += 1.0;
      }
  }

  Eigen::VectorXd apply(const Eigen::MatrixXd& q) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(count.size());
    const int dk = static_cast<int>(bk->size());
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j) out(pid(i, j)) += q(i, j);
    return out;
  }

  // Orthogonal projection of q onto {lin(Q) = f}.
  Eigen::MatrixXd project_affine(const Eigen::MatrixXd& q,
                                 const Eigen::VectorXd& f) const {
    const Eigen::VectorXd scaled = (apply(q) - f).cwiseQuotient(count);
    Eigen::MatrixXd out = q;
    const int dk = static_cast<int>(bk->size());
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j) out(i, j) -= scaled(pid(i, j));
    return out;
  }

  // Least-squares functional of a symmetric matrix: the u minimizing
  // ||W(u) - w||_F, i.e. the per-coefficient average of w.
  Eigen::VectorXd functional_of(const Eigen::MatrixXd& w) const {
    return apply(w).cwiseQuotient(count);
  }

  Eigen::MatrixXd moment_matrix_of(const Eigen::VectorXd& u) const {
    const int dk = static_cast<int>(bk->size());
    Eigen::MatrixXd w(dk, dk);
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j) w(i, j) = u(pid(i, j));
    return w;
  }
};

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& x, double* min_eig = nullptr) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("is_sos: eigensolver failed during PSD projection");
  if (min_eig) *min_eig = es.eigenvalues().minCoeff();
  Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd y =
      es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (y + y.transpose());
}

}  // namespace

double certificate_residual(const HomogeneousPoly& F, const Eigen::MatrixXd& gram) {
  const int n = F.nvars();
  const int k = F.degree() / 2;
  const auto& bk = MonomialBasis::get(n, k);
  const int dk = static_cast<int>(bk.size());
  if (gram.rows() != dk || gram.cols() != dk)
    throw std::invalid_argument("certificate_residual: Gram size mismatch");
  Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(F.coeffs().size());
  MultiIndex sum;
  sum.exponents.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      for (int v = 0; v < n; ++v) sum[v] = bk[static_cast<std::size_t>(i)][v] + bk[static_cast<std::size_t>(j)][v];
      rebuilt(F.basis().index_of(sum)) += gram(i, j);
    }
  return (rebuilt - F.coeffs()).cwiseAbs().maxCoeff();
}

bool validate_certificate(const HomogeneousPoly& F, const SosCertificate& cert,
                          const SosOptions& opts) {
  if (certificate_residual(F, cert.gram) > opts.feas_tolerance) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cert.gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues().minCoeff() >= -opts.psd_tolerance;
}

Eigen::MatrixXd moment_matrix(const std::vector<double>& functional, int n, int k) {
  const auto& bk = MonomialBasis::get(n, k);
  const auto& b2k = MonomialBasis::get(n, 2 * k);
  if (functional.size() != b2k.size())
    throw std::invalid_argument("moment_matrix: functional length mismatch");
  const int dk = static_cast<int>(bk.size());
  Eigen::MatrixXd w(dk, dk);
  MultiIndex sum;
  sum.exponents.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      for (int v = 0; v < n; ++v) sum[v] = bk[static_cast<std::size_t>(i)][v] + bk[static_cast<std::size_t>(j)][v];
      w(i, j) = functional[static_cast<std::size_t>(b2k.index_of(sum))];
    }
  return w;
}

bool validate_refutation(const HomogeneousPoly& F, const SosRefutation& ref,
                         double tol) {
  if (ref.functional.size() != static_cast<std::size_t>(F.coeffs().size())) return false;
  double value = 0.0;
  for (std::size_t g = 0; g < ref.functional.size(); ++g)
    value += ref.functional[g] * F.coeffs()[static_cast<Eigen::Index>(g)];
  if (!(value < -tol)) return false;
  Eigen::MatrixXd w = moment_matrix(ref.functional, F.nvars(), F.degree() / 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues().minCoeff() >= -tol;
}

SosDecision is_sos(const HomogeneousPoly& F, const SosOptions& opts) {
  if (F.degree() % 2 != 0)
    throw std::invalid_argument("is_sos: degree must be even");
  if (F.degree() == 0) {
    // Constants: nonnegative iff SOS.
    SosDecision d;
    const double c = F.coeffs()[0];
    if (c >= 0.0) {
      d.status = SosStatus::sos;
      d.certificate = SosCertificate{Eigen::MatrixXd::Constant(1, 1, c), 0.0};
    } else {
      d.status = SosStatus::not_sos;
      d.refutation = SosRefutation{{-1.0}, -std::abs(c), 0.0};
    }
    return d;
  }
  const int n = F.nvars();
  const int k = F.degree() / 2;
  const PairTable table(n, k);
  const Eigen::VectorXd& f = F.coeffs();

  SosDecision decision;
  Eigen::MatrixXd x = table.project_affine(
      Eigen::MatrixXd::Zero(table.pid.rows(), table.pid.cols()), f);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  Eigen::MatrixXd y = x;

  // Separating functional from the residual direction of the affine
  // projection, u = (lin(y) - f) / N: its moment matrix is the gap y - x,
  // which at the infeasible limit is PSD with u(F) = -||gap||^2 < 0.
  // Polishing alternates between the PSD cone and the moment structure until
  // the *normalized* matrix clears the validator floor. A refutation is sound
  // whenever it validates, so it may be extracted before the iteration budget
  // is spent.
  auto try_refutation = [&]() -> std::optional<SosRefutation> {
    Eigen::VectorXd u = (table.apply(y) - f).cwiseQuotient(table.count);
    Eigen::MatrixXd w = table.moment_matrix_of(u);
    for (int t = 0; t < 500; ++t) {
      double w_min = 0.0;
      Eigen::MatrixXd w_psd = project_psd(w, &w_min);
      if (w_min >= -0.5 * opts.psd_tolerance * w.norm()) break;
      u = table.functional_of(w_psd);
      w = table.moment_matrix_of(u);
    }
    const double wnorm = w.norm();
    if (wnorm <= 1e-300) return std::nullopt;
    u /= wnorm;
    SosRefutation ref;
    ref.functional.assign(u.data(), u.data() + u.size());
    ref.value_on_f = u.dot(f);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(table.moment_matrix_of(u),
                                                      Eigen::EigenvaluesOnly);
    ref.moment_matrix_min_eig =
        es.info() == Eigen::Success ? es.eigenvalues().minCoeff() : -1.0;
    if (!validate_refutation(F, ref, opts.psd_tolerance)) return std::nullopt;
    return ref;
  };

  for (long iter = 0; iter < opts.max_iterations; ++iter) {
    decision.iterations = iter + 1;
    // The affine iterate matches F exactly; accept it once it is PSD enough.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esx(x, Eigen::EigenvaluesOnly);
    if (esx.info() == Eigen::Success &&
        esx.eigenvalues().minCoeff() >= -opts.psd_tolerance) {
      SosCertificate cert{x, certificate_residual(F, x)};
      if (validate_certificate(F, cert, opts)) {
        decision.status = SosStatus::sos;
        decision.certificate = std::move(cert);
        return decision;
      }
    }
    // Dykstra step: PSD projection with correction, then back to the affine set.
    y = project_psd(x + p);
    p = x + p - y;
    const double y_residual = (table.apply(y) - f).cwiseAbs().maxCoeff();
    if (y_residual <= opts.feas_tolerance) {
      SosCertificate cert{y, certificate_residual(F, y)};
      if (validate_certificate(F, cert, opts)) {
        decision.status = SosStatus::sos;
        decision.certificate = std::move(cert);
        return decision;
      }
    }
    x = table.project_affine(y, f);
    if ((iter + 1) % 500 == 0) {
      if (auto ref = try_refutation()) {
        decision.status = SosStatus::not_sos;
        decision.refutation = std::move(*ref);
        return decision;
      }
    }
  }

  if (auto ref = try_refutation()) {
    decision.status = SosStatus::not_sos;
    decision.refutation = std::move(*ref);
    return decision;
  }
  decision.status = SosStatus::undecided;
  return decision;
}

GaugeSqResult gauge_sq(const HomogeneousPoly& f, const GramContext& ctx2k,
                       const GramContext& ctxk, double rel_tol,
                       const OptimizerConfig& cfg, const SosOptions& sos,
                       double known_gauge_c) {
  if (f.is_zero())
    throw std::invalid_argument("gauge_sq: zero polynomial has no gauge direction");
  if (std::abs(sphere_integral(f)) > 1e-9)
    throw std::invalid_argument("gauge_sq: polynomial must have sphere integral 0");
  if (rel_tol <= 0.0) throw std::invalid_argument("gauge_sq: need rel_tol > 0");

  const int n = f.nvars();
  const int k = f.degree() / 2;
  const HomogeneousPoly rk = r_power(n, k);
  const SymmetricForm h = hf_matrix(f, ctx2k, ctxk);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix, Eigen::EigenvaluesOnly);
  const double eig_lower = std::max(0.0, -es.eigenvalues().minCoeff());
  const double gc = known_gauge_c > 0.0 ? known_gauge_c : gauge_c(f, cfg);

  GaugeSqResult result;
  result.lower = std::max(eig_lower, gc);
  result.upper = 10.0 * gc;
  if (result.upper <= result.lower) result.upper = 2.0 * result.lower;

  auto probe = [&](double t) -> SosStatus {
    ++result.probes;
    return is_sos(f * (1.0 / t) + rk, sos).status;
  };

  // Establish a feasible upper end.
  int expansions = 0;
  for (;;) {
    const SosStatus s = probe(result.upper);
    if (s == SosStatus::sos) break;
    if (s == SosStatus::undecided || ++expansions > 8) {
      result.status = SosStatus::undecided;
      result.value = 0.5 * (result.lower + result.upper);
      return result;
    }
    result.lower = std::max(result.lower, result.upper);
    result.upper *= 2.0;
  }

  while (result.upper - result.lower > rel_tol * result.upper) {
    const double mid = 0.5 * (result.lower + result.upper);
    const SosStatus s = probe(mid);
    if (s == SosStatus::sos) {
      result.upper = mid;
    } else if (s == SosStatus::not_sos) {
      result.lower = mid;
    } else {
      result.status = SosStatus::undecided;
      result.value = 0.5 * (result.lower + result.upper);
      return result;
    }
  }
  result.status = SosStatus::sos;
  result.value = 0.5 * (result.lower + result.upper);
  return result;
}

double l4_check(const HomogeneousPoly& g, const GramContext& ctx) {
  if (g.nvars() != ctx.nvars() || g.degree() != ctx.degree())
    throw std::invalid_argument("l4_check: polynomial shape mismatch");
  const double norm = ctx.norm2(g);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("l4_check: g must have unit L2 norm");
  const HomogeneousPoly g2 = g * g;
  return std::sqrt(sphere_integral(g2 * g2));
}

}  // namespace sosvol
