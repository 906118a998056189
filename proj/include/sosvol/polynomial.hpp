#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sosvol/multi_index.hpp"

namespace sosvol {

/// A real homogeneous polynomial of fixed degree, stored as a dense
/// coefficient vector over the graded-lex monomial basis. Dense storage is
/// the right call at desk scale (dimensions of a few hundred at most);
/// sparse term lists appear only in file I/O.
class HomogeneousPoly {
 public:
  HomogeneousPoly(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const MonomialBasis& basis() const { return MonomialBasis::get(nvars_, degree_); }

  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }

  double coef(const MultiIndex& alpha) const;
  void set_coef(const MultiIndex& alpha, double value);
  void add_coef(const MultiIndex& alpha, double value);

  double evaluate(std::span<const double> x) const;
  /// Value and full Euclidean gradient in one pass.
  double eval_gradient(std::span<const double> x, std::span<double> grad) const;

  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(double s) const;
  HomogeneousPoly operator*(const HomogeneousPoly& o) const;  // degree adds

  /// f(Rx) for a linear change of variables R (n x n).
  HomogeneousPoly compose_linear(const Eigen::MatrixXd& R) const;

  double max_abs_coef() const;
  bool is_zero(double tol = 0.0) const;

 private:
  int nvars_;
  int degree_;
  Eigen::VectorXd coeffs_;
};

/// (x_1^2 + ... + x_n^2)^k, the polynomial that is identically 1 on S^{n-1}.
HomogeneousPoly r_power(int n, int k);

/// Exact sphere integral of f (sum of coefficient times monomial moment).
double sphere_integral(const HomogeneousPoly& f);

}  // namespace sosvol
