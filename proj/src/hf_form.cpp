#include "sosvol/hf_form.hpp"

#include <stdexcept>

namespace sosvol {

HfBuilder::HfBuilder(std::shared_ptr<const GramContext> ctx2k,
                     std::shared_ptr<const GramContext> ctxk)
    : ctx2k_(std::move(ctx2k)), ctxk_(std::move(ctxk)) {
  if (ctxk_->nvars() != ctx2k_->nvars())
    throw std::invalid_argument("HfBuilder: variable count mismatch");
  if (ctx2k_->degree() != 2 * ctxk_->degree())
    throw std::invalid_argument("HfBuilder: context degrees must be (2k, k)");
  const auto& bk = ctxk_->basis();
  const auto& b2k = ctx2k_->basis();
  const int dk = static_cast<int>(bk.size());
  product_index_.resize(dk, dk);
  MultiIndex sum;
  sum.exponents.resize(static_cast<std::size_t>(ctxk_->nvars()));
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      for (int v = 0; v < ctxk_->nvars(); ++v)
        sum[v] = bk[static_cast<std::size_t>(i)][v] + bk[static_cast<std::size_t>(j)][v];
      product_index_(i, j) = static_cast<int>(b2k.index_of(sum));
    }
}

SymmetricForm HfBuilder::build(const HomogeneousPoly& f) const {
  if (f.nvars() != ctx2k_->nvars() || f.degree() != ctx2k_->degree())
    throw std::invalid_argument("hf_matrix: f must live in P_{n,2k}");
  // w_gamma = <f, x^gamma> over the degree-2k Gram, then
  // H_mono(i,j) = <f, x^{alpha_i + alpha_j}> and H = U^T H_mono U.
  const Eigen::VectorXd w = ctx2k_->gram() * f.coeffs();
  const int dk = static_cast<int>(ctxk_->dim());
  Eigen::MatrixXd hmono(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = i; j < dk; ++j)
      hmono(i, j) = hmono(j, i) = w(product_index_(i, j));
  const Eigen::MatrixXd& u = ctxk_->orthonormal();
  SymmetricForm h;
  h.matrix = u.transpose() * hmono * u;
  // Enforce exact symmetry against rounding in the congruence.
  h.matrix = 0.5 * (h.matrix + h.matrix.transpose()).eval();
  return h;
}

SymmetricForm hf_matrix(const HomogeneousPoly& f, const GramContext& ctx2k,
                        const GramContext& ctxk) {
  HfBuilder builder(GramContext::build(ctx2k.nvars(), ctx2k.degree()),
                    GramContext::build(ctxk.nvars(), ctxk.degree()));
  return builder.build(f);
}

double sq_norm(const SymmetricForm& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sq_norm: eigensolver failed to converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double support_sq(const SymmetricForm& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("support_sq: eigensolver failed to converge");
  return es.eigenvalues().maxCoeff();
}

double sq_norm(const HomogeneousPoly& f, const GramContext& ctx2k,
               const GramContext& ctxk) {
  return sq_norm(hf_matrix(f, ctx2k, ctxk));
}

double support_sq(const HomogeneousPoly& f, const GramContext& ctx2k,
                  const GramContext& ctxk) {
  return support_sq(hf_matrix(f, ctx2k, ctxk));
}

}  // namespace sosvol
