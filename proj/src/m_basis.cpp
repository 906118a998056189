#include "sosvol/m_basis.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "sosvol/parallel.hpp"
#include "sosvol/rng.hpp"

namespace sosvol {

MBasis::MBasis(std::shared_ptr<const GramContext> ctx, Eigen::MatrixXd vectors,
               Eigen::MatrixXd coord_map)
    : ctx_(std::move(ctx)), vectors_(std::move(vectors)), coord_map_(std::move(coord_map)) {}

MBasis MBasis::build(std::shared_ptr<const GramContext> ctx) {
  if (ctx->degree() < 2 || ctx->degree() % 2 != 0)
    throw std::invalid_argument("MBasis: context degree must be even and >= 2");
  const int d = ctx->dim();
  const HomogeneousPoly r = r_power(ctx->nvars(), ctx->degree() / 2);
  // r^{2k} is a unit vector: <r^{2k}, r^{2k}> = 1.
  Eigen::VectorXd c = ctx->orthonormal_coords(r);
  // Householder H = I - 2ww^T with Hc = sigma e_1; the sign opposite to c_1
  // keeps w = c - sigma e_1 away from cancellation. Columns 2..d of H are
  // orthonormal and orthogonal to c either way.
  const double sigma = c(0) >= 0.0 ? -1.0 : 1.0;
  Eigen::VectorXd w = c;
  w(0) -= sigma;
  w /= w.norm();
  const Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(d, d) - 2.0 * w * w.transpose();
  // Columns 2..d of U*H are the M basis in monomial coefficients.
  Eigen::MatrixXd uh = ctx->orthonormal() * h;
  Eigen::MatrixXd vectors = uh.rightCols(d - 1);
  // coords(f) = (H L^T f)[1:] since H is symmetric.
  Eigen::MatrixXd coord_map =
      (h * ctx->factor().transpose()).bottomRows(d - 1);
  return MBasis(std::move(ctx), std::move(vectors), std::move(coord_map));
}

MBasis build_m_basis(std::shared_ptr<const GramContext> ctx) {
  return MBasis::build(std::move(ctx));
}

HomogeneousPoly MBasis::to_poly(const Eigen::VectorXd& z) const {
  if (z.size() != dim()) throw std::invalid_argument("MBasis::to_poly: wrong length");
  HomogeneousPoly f(ctx_->nvars(), ctx_->degree());
  f.coeffs() = vectors_ * z;
  return f;
}

Eigen::VectorXd MBasis::coords(const HomogeneousPoly& f) const {
  if (f.nvars() != ctx_->nvars() || f.degree() != ctx_->degree())
    throw std::invalid_argument("MBasis::coords: polynomial shape mismatch");
  return coord_map_ * f.coeffs();
}

Eigen::VectorXd MBasis::eval_basis(std::span<const double> v) const {
  const int dm = dim();
  Eigen::VectorXd w(dm);
  for (int j = 0; j < dm; ++j) {
    HomogeneousPoly b(ctx_->nvars(), ctx_->degree());
    b.coeffs() = vectors_.col(j);
    w(j) = b.evaluate(v);
  }
  return w;
}

Eigen::MatrixXd sample_unit_vectors(int dim, long count, std::uint64_t seed,
                                    int threads) {
  if (dim < 1) throw std::invalid_argument("sample_unit_vectors: need dim >= 1");
  if (count < 1) throw std::invalid_argument("sample_unit_vectors: need count >= 1");
  Eigen::MatrixXd pts(count, dim);
  parallel_for(count, threads, [&](long i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    double norm2 = 0.0;
    do {
      for (int j = 0; j < dim; ++j) {
        const double g = rng.next_gaussian();
        pts(i, j) = g;
      }
      norm2 = pts.row(i).squaredNorm();
    } while (norm2 == 0.0);
    pts.row(i) /= std::sqrt(norm2);
  });
  return pts;
}

SampleBatch sample_sm(const MBasis& basis, long count, std::uint64_t seed,
                      int threads) {
  SampleBatch batch;
  batch.seed = seed;
  batch.points = sample_unit_vectors(basis.dim(), count, seed, threads);
  return batch;
}

void write_batch_csv(std::ostream& os, const SampleBatch& batch, int n, int k) {
  char head[128];
  std::snprintf(head, sizeof(head), "# n=%d k=%d seed=%" PRIu64 " count=%ld\n", n, k,
                batch.seed, batch.count());
  os << head;
  char num[40];
  for (long i = 0; i < batch.count(); ++i) {
    for (int j = 0; j < batch.points.cols(); ++j) {
      std::snprintf(num, sizeof(num), "%.17g", batch.points(i, j));
      if (j) os << ',';
      os << num;
    }
    os << '\n';
  }
}

}  // namespace sosvol
