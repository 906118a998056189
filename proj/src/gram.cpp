#include "sosvol/gram.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sosvol/moments.hpp"

namespace sosvol {

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& a, double pivot_floor) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("cholesky_factor: square matrix required");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
    if (pivot <= pivot_floor) {
      std::ostringstream msg;
      msg << "cholesky_factor: pivot " << pivot << " at index " << j
          << " is at or below the floor " << pivot_floor;
      throw std::runtime_error(msg.str());
    }
    l(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

GramContext::GramContext(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  const auto& b = basis();
  const int d = static_cast<int>(b.size());
  gram_exact_.resize(static_cast<std::size_t>(d) * d);
  gram_.resize(d, d);
  MultiIndex sum;
  sum.exponents.resize(static_cast<std::size_t>(nvars));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      for (int v = 0; v < nvars; ++v) sum[v] = b[static_cast<std::size_t>(i)][v] + b[static_cast<std::size_t>(j)][v];
      Rational m = sphere_moment(sum, nvars);
      gram_exact_[static_cast<std::size_t>(i) * d + j] = m;
      gram_exact_[static_cast<std::size_t>(j) * d + i] = m;
      gram_(i, j) = gram_(j, i) = to_double(m);
    }
  }
  factor_ = cholesky_factor(gram_);
  orthonormal_ = factor_.transpose()
                     .triangularView<Eigen::Upper>()
                     .solve(Eigen::MatrixXd::Identity(d, d));
}

std::shared_ptr<const GramContext> GramContext::build(int nvars, int degree) {
  if (nvars < 1) throw std::invalid_argument("GramContext: need nvars >= 1");
  if (degree < 0) throw std::invalid_argument("GramContext: need degree >= 0");
  // Contexts are immutable, so one shared instance per (n, d) is enough.
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const GramContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::shared_ptr<const GramContext>(new GramContext(nvars, degree));
  return slot;
}

double GramContext::inner(const HomogeneousPoly& f, const HomogeneousPoly& g) const {
  if (f.nvars() != nvars_ || f.degree() != degree_ || g.nvars() != nvars_ ||
      g.degree() != degree_)
    throw std::invalid_argument("GramContext::inner: polynomial shape mismatch");
  return f.coeffs().dot(gram_ * g.coeffs());
}

double GramContext::norm2(const HomogeneousPoly& f) const {
  const double v = inner(f, f);
  return v <= 0.0 ? 0.0 : std::sqrt(v);
}

Eigen::VectorXd GramContext::orthonormal_coords(const HomogeneousPoly& f) const {
  if (f.nvars() != nvars_ || f.degree() != degree_)
    throw std::invalid_argument("orthonormal_coords: polynomial shape mismatch");
  return factor_.transpose() * f.coeffs();
}

HomogeneousPoly GramContext::from_orthonormal_coords(const Eigen::VectorXd& y) const {
  if (y.size() != dim())
    throw std::invalid_argument("from_orthonormal_coords: wrong length");
  HomogeneousPoly f(nvars_, degree_);
  f.coeffs() = orthonormal_ * y;
  return f;
}

double apolar_inner(const HomogeneousPoly& f, const HomogeneousPoly& g,
                    const GramContext& ctx) {
  return ctx.inner(f, g);
}

HomogeneousPoly project_to_m(const HomogeneousPoly& f, const GramContext& ctx) {
  if (f.nvars() != ctx.nvars() || f.degree() != ctx.degree())
    throw std::invalid_argument("project_to_m: polynomial shape mismatch");
  if (f.degree() % 2 != 0)
    throw std::invalid_argument("project_to_m: degree must be even");
  const double mean = sphere_integral(f);
  return f - r_power(ctx.nvars(), ctx.degree() / 2) * mean;
}

}  // namespace sosvol
