#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "sosvol/polynomial.hpp"
#include "sosvol/rational.hpp"

namespace sosvol {

/// Inner-product context for P_{n,d} under <f,g> = integral of fg over the
/// sphere. The Gram matrix of the monomial basis is computed exactly in
/// rational arithmetic and converted to floating point only once, for the
/// triangular factorization; downstream error is then attributable to
/// sampling or optimization, never to quadrature.
///
/// Immutable after construction and shareable across threads.
class GramContext {
 public:
  static std::shared_ptr<const GramContext> build(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  int dim() const { return static_cast<int>(basis().size()); }
  const MonomialBasis& basis() const { return MonomialBasis::get(nvars_, degree_); }

  /// Exact entries, row-major dim x dim; entry (a,b) is the moment of x^{a+b}.
  const std::vector<Rational>& gram_exact() const { return gram_exact_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  /// Lower-triangular L with L L^T = gram.
  const Eigen::MatrixXd& factor() const { return factor_; }
  /// U = L^{-T}; column j holds the monomial coefficients of the j-th
  /// apolar-orthonormal basis form of P_{n,d}.
  const Eigen::MatrixXd& orthonormal() const { return orthonormal_; }

  double inner(const HomogeneousPoly& f, const HomogeneousPoly& g) const;
  double norm2(const HomogeneousPoly& f) const;

  /// Coordinates of f in the orthonormal basis (y = L^T c).
  Eigen::VectorXd orthonormal_coords(const HomogeneousPoly& f) const;
  HomogeneousPoly from_orthonormal_coords(const Eigen::VectorXd& y) const;

 private:
  GramContext(int nvars, int degree);

  int nvars_;
  int degree_;
  std::vector<Rational> gram_exact_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd factor_;
  Eigen::MatrixXd orthonormal_;
};

/// <f,g> through the exact monomial Gram matrix. Symmetric and bilinear.
double apolar_inner(const HomogeneousPoly& f, const HomogeneousPoly& g,
                    const GramContext& ctx);

/// f minus its sphere mean: f - (integral of f) * r^{2k}.
HomogeneousPoly project_to_m(const HomogeneousPoly& f, const GramContext& ctx);

/// Cholesky with a hard pivot floor. The Gram matrices here are positive
/// definite in exact arithmetic, so a pivot at or below the floor signals
/// ill-conditioning that must surface as an error, not as garbage output.
Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& a, double pivot_floor = 1e-13);

}  // namespace sosvol
