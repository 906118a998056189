#pragma once

#include <span>
#include <vector>

#include "sosvol/m_basis.hpp"

namespace sosvol {

/// Riesz representer of evaluation at v on M: the unique q_v in M with
/// <q_v, f> = f(v) for every f in M. For unit v its norm is sqrt(D_M).
struct KernelForm {
  std::vector<double> v;
  HomogeneousPoly q;
  Eigen::VectorXd coords;  // M-coordinates of q (the basis evaluations at v)
};

/// q_v expanded over the orthonormal basis of M: q_v = sum_j b_j(v) b_j.
/// Rejects v with | |v| - 1 | > 1e-12.
KernelForm kernel_at(std::span<const double> v, const GramContext& ctx,
                     const MBasis& basis);

/// Moment of a single coordinate against the uniform measure on S^{D-1}:
///   integral of <f,p>^{2m} dmu(f)  =  Gamma(m+1/2) Gamma(D/2) / (sqrt(pi) Gamma(D/2+m))
/// for unit p. Evaluated through log-Gamma differences; the direct Gamma
/// ratio overflows already near D = 500.
double pairing_moment(int D, int m);

}  // namespace sosvol
