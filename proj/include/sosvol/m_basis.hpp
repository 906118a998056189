#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>

#include <Eigen/Dense>

#include "sosvol/gram.hpp"

namespace sosvol {

/// Orthonormal basis of the hyperplane M of forms with zero sphere integral,
/// i.e. the orthogonal complement of r^{2k} in P_{n,2k}. Built from the
/// context's orthonormal basis by a Householder reflection that sends the
/// coordinate vector of r^{2k} to the first axis.
class MBasis {
 public:
  static MBasis build(std::shared_ptr<const GramContext> ctx);

  int dim() const { return static_cast<int>(vectors_.cols()); }
  const GramContext& ctx() const { return *ctx_; }
  std::shared_ptr<const GramContext> ctx_ptr() const { return ctx_; }

  /// Column j holds the monomial coefficients of basis form b_j.
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  /// Form with M-coordinates z (linear combination of the basis).
  HomogeneousPoly to_poly(const Eigen::VectorXd& z) const;

  /// M-coordinates of f; the component along r^{2k} is dropped.
  Eigen::VectorXd coords(const HomogeneousPoly& f) const;

  /// (b_1(v), ..., b_{D_M}(v)) for a point v in R^n.
  Eigen::VectorXd eval_basis(std::span<const double> v) const;

 private:
  MBasis(std::shared_ptr<const GramContext> ctx, Eigen::MatrixXd vectors,
         Eigen::MatrixXd coord_map);

  std::shared_ptr<const GramContext> ctx_;
  Eigen::MatrixXd vectors_;    // dim(P) x D_M
  Eigen::MatrixXd coord_map_;  // D_M x dim(P): coords(f) = coord_map * coeffs(f)
};

/// Free-function form of MBasis::build.
MBasis build_m_basis(std::shared_ptr<const GramContext> ctx);

/// Seeded batch of uniform points on the unit sphere of M, as rows of
/// coordinates in the MBasis. Identical for any worker count.
struct SampleBatch {
  std::uint64_t seed = 0;
  Eigen::MatrixXd points;  // count x D_M, unit rows

  long count() const { return points.rows(); }
};

SampleBatch sample_sm(const MBasis& basis, long count, std::uint64_t seed,
                      int threads = 1);

/// Uniform points on the unit sphere of R^dim (Gaussian direction method),
/// counter-seeded per row.
Eigen::MatrixXd sample_unit_vectors(int dim, long count, std::uint64_t seed,
                                    int threads = 1);

/// CSV export: a comment header recording n, k, seed and count, then one row
/// of MBasis coordinates per sample.
void write_batch_csv(std::ostream& os, const SampleBatch& batch, int n, int k);

}  // namespace sosvol
