#include "sosvol/multi_index.hpp"

#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace sosvol {

int MultiIndex::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::size_t MultiIndexHash::operator()(const MultiIndex& m) const {
  // FNV-1a over the exponent bytes.
  std::size_t h = 1469598103934665603ull;
  for (int e : m.exponents) {
    h ^= static_cast<std::size_t>(e);
    h *= 1099511628211ull;
  }
  return h;
}

std::int64_t binomial_checked(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) stays integral after dividing by i at each step.
    std::int64_t num = n - k + i;
    std::int64_t g = std::gcd(result, i);
    std::int64_t r = result / g;
    std::int64_t d = i / g;
    if (num % d != 0) throw std::runtime_error("binomial: internal divisibility failure");
    num /= d;
    if (r != 0 && num > std::numeric_limits<std::int64_t>::max() / r)
      throw std::overflow_error("binomial overflows 64-bit integer");
    result = r * num;
  }
  return result;
}

std::int64_t dim_p(int n, int d) {
  if (n < 1) throw std::invalid_argument("dim_p: need n >= 1");
  if (d < 0) throw std::invalid_argument("dim_p: need d >= 0");
  return binomial_checked(static_cast<std::int64_t>(n) + d - 1, d);
}

std::int64_t dim_m(int n, int k) {
  if (n < 1) throw std::invalid_argument("dim_m: need n >= 1");
  if (k < 1) throw std::invalid_argument("dim_m: need k >= 1");
  return binomial_checked(static_cast<std::int64_t>(n) + 2 * k - 1, 2 * k) - 1;
}

namespace {

void enumerate(int nvars, int degree, std::vector<int>& prefix,
               std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == nvars - 1) {
    prefix.push_back(degree);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(nvars, degree - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree)
    : nvars_(nvars), degree_(degree) {
  if (nvars < 1) throw std::invalid_argument("MonomialBasis: need nvars >= 1");
  if (degree < 0) throw std::invalid_argument("MonomialBasis: need degree >= 0");
  std::vector<int> prefix;
  enumerate(nvars, degree, prefix, indices_);
  lookup_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i], i);
}

std::ptrdiff_t MonomialBasis::index_of(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  return it == lookup_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

const MonomialBasis& MonomialBasis::get(int nvars, int degree) {
  static std::mutex mutex;
  static std::unordered_map<std::uint64_t, std::unique_ptr<MonomialBasis>> cache;
  const std::uint64_t key =
      (static_cast<std::uint64_t>(nvars) << 32) | static_cast<std::uint32_t>(degree);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<MonomialBasis>(nvars, degree)).first;
  }
  return *it->second;
}

}  // namespace sosvol
