#include "sosvol/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sosvol {

KernelForm kernel_at(std::span<const double> v, const GramContext& ctx,
                     const MBasis& basis) {
  if (static_cast<int>(v.size()) != ctx.nvars())
    throw std::invalid_argument("kernel_at: point dimension mismatch");
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
    throw std::invalid_argument("kernel_at: v must be a unit vector");
  Eigen::VectorXd w = basis.eval_basis(v);
  KernelForm k{std::vector<double>(v.begin(), v.end()), basis.to_poly(w), std::move(w)};
  return k;
}

double pairing_moment(int D, int m) {
  if (D < 1) throw std::invalid_argument("pairing_moment: need D >= 1");
  if (m < 0) throw std::invalid_argument("pairing_moment: need m >= 0");
  if (m == 0) return 1.0;
  const double log_value = std::lgamma(m + 0.5) + std::lgamma(0.5 * D) -
                           0.5 * std::log(std::numbers::pi) -
                           std::lgamma(0.5 * D + m);
  return std::exp(log_value);
}

}  // namespace sosvol
