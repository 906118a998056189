#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sosvol/gram.hpp"
#include "sosvol/m_basis.hpp"
#include "sosvol/polynomial.hpp"
#include "sosvol/rng.hpp"

namespace sosvol::testutil {

// x^4 y^2 + x^2 y^4 + z^6 - 3 x^2 y^2 z^2: nonnegative on R^3, not a sum of
// squares, vanishing at (+-1,+-1,+-1)/sqrt(3) and on the z = 0 coordinate axes.
inline HomogeneousPoly motzkin() {
  HomogeneousPoly f(3, 6);
  f.set_coef(MultiIndex({4, 2, 0}), 1.0);
  f.set_coef(MultiIndex({2, 4, 0}), 1.0);
  f.set_coef(MultiIndex({0, 0, 6}), 1.0);
  f.set_coef(MultiIndex({2, 2, 2}), -3.0);
  return f;
}

inline HomogeneousPoly random_poly(int n, int d, std::uint64_t seed) {
  HomogeneousPoly f(n, d);
  CounterRng rng(seed, 0);
  for (Eigen::Index i = 0; i < f.coeffs().size(); ++i)
    f.coeffs()[i] = rng.next_gaussian();
  return f;
}

inline Eigen::MatrixXd random_rotation(int n, std::uint64_t seed) {
  CounterRng rng(seed, 1);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.next_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

inline std::vector<double> random_unit_point(int n, std::uint64_t seed) {
  CounterRng rng(seed, 2);
  std::vector<double> x(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  for (auto& v : x) {
    v = rng.next_gaussian();
    norm2 += v * v;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : x) v *= inv;
  return x;
}

// Unit-norm form of P_{n,d} under the apolar inner product.
inline HomogeneousPoly random_unit_form(const GramContext& ctx, std::uint64_t seed) {
  CounterRng rng(seed, 3);
  Eigen::VectorXd y(ctx.dim());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.next_gaussian();
  y /= y.norm();
  return ctx.from_orthonormal_coords(y);
}

// Unit-norm mean-zero form (a point of S_M).
inline HomogeneousPoly random_unit_form_in_m(const MBasis& basis, std::uint64_t seed) {
  CounterRng rng(seed, 4);
  Eigen::VectorXd z(basis.dim());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.next_gaussian();
  z /= z.norm();
  return basis.to_poly(z);
}

}  // namespace sosvol::testutil
