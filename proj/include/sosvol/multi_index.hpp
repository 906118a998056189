#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace sosvol {

/// Exponent vector of a monomial x^alpha. The degree is the exponent sum.
struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}

  int size() const { return static_cast<int>(exponents.size()); }
  int degree() const;
  int operator[](int i) const { return exponents[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return exponents[static_cast<std::size_t>(i)]; }

  bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const;
};

/// Dimension of P_{n,d}: binomial(n+d-1, d). Throws std::overflow_error if the
/// value does not fit in 64 bits.
std::int64_t dim_p(int n, int d);

/// Dimension of the zero-mean hyperplane M in P_{n,2k}: binomial(n+2k-1, 2k) - 1.
std::int64_t dim_m(int n, int k);

/// Checked binomial coefficient on 64-bit integers.
std::int64_t binomial_checked(std::int64_t n, std::int64_t k);

/// The degree-d monomials in n variables, enumerated in graded-lexicographic
/// order (descending lex within the fixed degree). This ordering is the
/// canonical coefficient order everywhere: serialization, Gram indexing and
/// dense coefficient vectors all use it.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Position of alpha in the enumeration, or -1 if absent.
  std::ptrdiff_t index_of(const MultiIndex& alpha) const;

  /// Shared per-(n, d) instance; construction is thread-safe.
  static const MonomialBasis& get(int nvars, int degree);

 private:
  int nvars_;
  int degree_;
  std::vector<MultiIndex> indices_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> lookup_;
};

}  // namespace sosvol
