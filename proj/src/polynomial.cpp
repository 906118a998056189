#include "sosvol/polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "sosvol/moments.hpp"

namespace sosvol {

HomogeneousPoly::HomogeneousPoly(int nvars, int degree)
    : nvars_(nvars), degree_(degree) {
  const auto& b = MonomialBasis::get(nvars, degree);
  coeffs_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size()));
}

double HomogeneousPoly::coef(const MultiIndex& alpha) const {
  const std::ptrdiff_t i = basis().index_of(alpha);
  if (i < 0) throw std::invalid_argument("coef: multi-index not in basis");
  return coeffs_[i];
}

void HomogeneousPoly::set_coef(const MultiIndex& alpha, double value) {
  const std::ptrdiff_t i = basis().index_of(alpha);
  if (i < 0) throw std::invalid_argument("set_coef: multi-index not in basis");
  coeffs_[i] = value;
}

void HomogeneousPoly::add_coef(const MultiIndex& alpha, double value) {
  const std::ptrdiff_t i = basis().index_of(alpha);
  if (i < 0) throw std::invalid_argument("add_coef: multi-index not in basis");
  coeffs_[i] += value;
}

double HomogeneousPoly::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw std::invalid_argument("evaluate: point has wrong dimension");
  // Power table: pw[i*(d+1)+e] = x_i^e.
  const int cols = degree_ + 1;
  std::vector<double> pw(static_cast<std::size_t>(nvars_) * cols);
  for (int i = 0; i < nvars_; ++i) {
    pw[static_cast<std::size_t>(i) * cols] = 1.0;
    for (int e = 1; e <= degree_; ++e)
      pw[static_cast<std::size_t>(i) * cols + e] =
          pw[static_cast<std::size_t>(i) * cols + e - 1] * x[static_cast<std::size_t>(i)];
  }
  const auto& b = basis();
  double sum = 0.0;
  for (std::size_t t = 0; t < b.size(); ++t) {
    const double c = coeffs_[static_cast<Eigen::Index>(t)];
    if (c == 0.0) continue;
    double term = c;
    const MultiIndex& a = b[t];
    for (int i = 0; i < nvars_; ++i)
      term *= pw[static_cast<std::size_t>(i) * cols + a[i]];
    sum += term;
  }
  return sum;
}

double HomogeneousPoly::eval_gradient(std::span<const double> x,
                                      std::span<double> grad) const {
  if (static_cast<int>(x.size()) != nvars_ ||
      static_cast<int>(grad.size()) != nvars_)
    throw std::invalid_argument("eval_gradient: dimension mismatch");
  const int cols = degree_ + 1;
  std::vector<double> pw(static_cast<std::size_t>(nvars_) * cols);
  for (int i = 0; i < nvars_; ++i) {
    pw[static_cast<std::size_t>(i) * cols] = 1.0;
    for (int e = 1; e <= degree_; ++e)
      pw[static_cast<std::size_t>(i) * cols + e] =
          pw[static_cast<std::size_t>(i) * cols + e - 1] * x[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < nvars_; ++i) grad[static_cast<std::size_t>(i)] = 0.0;
  const auto& b = basis();
  double sum = 0.0;
  std::vector<double> prefix(static_cast<std::size_t>(nvars_) + 1);
  std::vector<double> suffix(static_cast<std::size_t>(nvars_) + 1);
  for (std::size_t t = 0; t < b.size(); ++t) {
    const double c = coeffs_[static_cast<Eigen::Index>(t)];
    if (c == 0.0) continue;
    const MultiIndex& a = b[t];
    // prefix[i] = prod_{j<i} x_j^{a_j}, suffix[i] = prod_{j>=i} x_j^{a_j}
    prefix[0] = 1.0;
    for (int i = 0; i < nvars_; ++i)
      prefix[static_cast<std::size_t>(i) + 1] =
          prefix[static_cast<std::size_t>(i)] * pw[static_cast<std::size_t>(i) * cols + a[i]];
    suffix[static_cast<std::size_t>(nvars_)] = 1.0;
    for (int i = nvars_ - 1; i >= 0; --i)
      suffix[static_cast<std::size_t>(i)] =
          suffix[static_cast<std::size_t>(i) + 1] * pw[static_cast<std::size_t>(i) * cols + a[i]];
    sum += c * prefix[static_cast<std::size_t>(nvars_)];
    for (int i = 0; i < nvars_; ++i) {
      if (a[i] == 0) continue;
      grad[static_cast<std::size_t>(i)] +=
          c * a[i] * prefix[static_cast<std::size_t>(i)] *
          pw[static_cast<std::size_t>(i) * cols + a[i] - 1] *
          suffix[static_cast<std::size_t>(i) + 1];
    }
  }
  return sum;
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  if (o.nvars_ != nvars_ || o.degree_ != degree_)
    throw std::invalid_argument("poly +: shape mismatch");
  HomogeneousPoly r(nvars_, degree_);
  r.coeffs_ = coeffs_ + o.coeffs_;
  return r;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
  if (o.nvars_ != nvars_ || o.degree_ != degree_)
    throw std::invalid_argument("poly -: shape mismatch");
  HomogeneousPoly r(nvars_, degree_);
  r.coeffs_ = coeffs_ - o.coeffs_;
  return r;
}

HomogeneousPoly HomogeneousPoly::operator*(double s) const {
  HomogeneousPoly r(nvars_, degree_);
  r.coeffs_ = coeffs_ * s;
  return r;
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
  if (o.nvars_ != nvars_)
    throw std::invalid_argument("poly *: variable count mismatch");
  HomogeneousPoly r(nvars_, degree_ + o.degree_);
  const auto& ba = basis();
  const auto& bb = o.basis();
  const auto& br = r.basis();
  MultiIndex sum;
  sum.exponents.resize(static_cast<std::size_t>(nvars_));
  for (std::size_t i = 0; i < ba.size(); ++i) {
    const double ci = coeffs_[static_cast<Eigen::Index>(i)];
    if (ci == 0.0) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      const double cj = o.coeffs_[static_cast<Eigen::Index>(j)];
      if (cj == 0.0) continue;
      for (int v = 0; v < nvars_; ++v) sum[v] = ba[i][v] + bb[j][v];
      r.coeffs_[br.index_of(sum)] += ci * cj;
    }
  }
  return r;
}

HomogeneousPoly HomogeneousPoly::compose_linear(const Eigen::MatrixXd& R) const {
  if (R.rows() != nvars_ || R.cols() != nvars_)
    throw std::invalid_argument("compose_linear: R must be n x n");
  // Linear forms l_i = sum_j R(i,j) x_j, then each monomial is prod l_i^{a_i}.
  std::vector<HomogeneousPoly> lin;
  lin.reserve(static_cast<std::size_t>(nvars_));
  for (int i = 0; i < nvars_; ++i) {
    HomogeneousPoly li(nvars_, 1);
    for (int j = 0; j < nvars_; ++j) {
      MultiIndex e;
      e.exponents.assign(static_cast<std::size_t>(nvars_), 0);
      e[j] = 1;
      li.set_coef(e, R(i, j));
    }
    lin.push_back(std::move(li));
  }
  HomogeneousPoly out(nvars_, degree_);
  const auto& b = basis();
  for (std::size_t t = 0; t < b.size(); ++t) {
    const double c = coeffs_[static_cast<Eigen::Index>(t)];
    if (c == 0.0) continue;
    HomogeneousPoly term(nvars_, 0);
    term.coeffs_[0] = c;
    for (int i = 0; i < nvars_; ++i)
      for (int rep = 0; rep < b[t][i]; ++rep) term = term * lin[static_cast<std::size_t>(i)];
    out.coeffs_ += term.coeffs_;
  }
  return out;
}

double HomogeneousPoly::max_abs_coef() const {
  return coeffs_.size() == 0 ? 0.0 : coeffs_.cwiseAbs().maxCoeff();
}

bool HomogeneousPoly::is_zero(double tol) const { return max_abs_coef() <= tol; }

HomogeneousPoly r_power(int n, int k) {
  if (n < 1) throw std::invalid_argument("r_power: need n >= 1");
  if (k < 0) throw std::invalid_argument("r_power: need k >= 0");
  HomogeneousPoly r2(n, 2);
  for (int i = 0; i < n; ++i) {
    MultiIndex e;
    e.exponents.assign(static_cast<std::size_t>(n), 0);
    e[i] = 2;
    r2.set_coef(e, 1.0);
  }
  HomogeneousPoly out(n, 0);
  out.coeffs()[0] = 1.0;
  for (int rep = 0; rep < k; ++rep) out = out * r2;
  return out;
}

double sphere_integral(const HomogeneousPoly& f) {
  const auto& b = f.basis();
  double sum = 0.0;
  for (std::size_t t = 0; t < b.size(); ++t) {
    const double c = f.coeffs()[static_cast<Eigen::Index>(t)];
    if (c == 0.0) continue;
    sum += c * sphere_moment_d(b[t], f.nvars());
  }
  return sum;
}

}  // namespace sosvol
