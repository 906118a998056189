#pragma once

#include <memory>

#include <Eigen/Dense>

#include "sosvol/gram.hpp"

namespace sosvol {

/// Matrix of the quadratic form g -> <f, g^2> on P_{n,k}, expressed in the
/// apolar-orthonormal basis of P_{n,k}. In that basis H_{r^{2k}} is exactly
/// the identity.
struct SymmetricForm {
  Eigen::MatrixXd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Precomputed machinery for building H_f matrices: the pairing table from
/// monomial products of P_{n,k} into P_{n,2k} and the orthonormal change of
/// basis. Reuse one builder when mapping many forms of the same shape.
class HfBuilder {
 public:
  HfBuilder(std::shared_ptr<const GramContext> ctx2k,
            std::shared_ptr<const GramContext> ctxk);

  const GramContext& ctx2k() const { return *ctx2k_; }
  const GramContext& ctxk() const { return *ctxk_; }

  SymmetricForm build(const HomogeneousPoly& f) const;

 private:
  std::shared_ptr<const GramContext> ctx2k_;
  std::shared_ptr<const GramContext> ctxk_;
  Eigen::MatrixXi product_index_;  // (i,j) -> index of alpha_i + alpha_j in P_{n,2k}
};

SymmetricForm hf_matrix(const HomogeneousPoly& f, const GramContext& ctx2k,
                        const GramContext& ctxk);

/// ||H_f||_inf: largest absolute eigenvalue (the sq norm of f).
double sq_norm(const SymmetricForm& h);

/// Largest signed eigenvalue of H_f: the support function of the SOS base at
/// f in M. Always <= sq_norm.
double support_sq(const SymmetricForm& h);

double sq_norm(const HomogeneousPoly& f, const GramContext& ctx2k,
               const GramContext& ctxk);
double support_sq(const HomogeneousPoly& f, const GramContext& ctx2k,
                  const GramContext& ctxk);

}  // namespace sosvol
