#include "sosvol/moments.hpp"

#include <stdexcept>

namespace sosvol {

BigInt odd_double_factorial(int m) {
  BigInt r = 1;
  for (int j = 3; j <= 2 * m - 1; j += 2) r *= j;
  return r;
}

Rational sphere_moment(const MultiIndex& alpha, int n) {
  if (alpha.size() != n)
    throw std::invalid_argument("sphere_moment: alpha length must equal n");
  for (int i = 0; i < n; ++i) {
    if (alpha[i] < 0) throw std::invalid_argument("sphere_moment: negative exponent");
    if (alpha[i] % 2 != 0) return Rational(0);
  }
  BigInt num = 1;
  int half_degree = 0;
  for (int i = 0; i < n; ++i) {
    const int a = alpha[i] / 2;
    num *= odd_double_factorial(a);
    half_degree += a;
  }
  BigInt den = 1;
  for (int j = 0; j < half_degree; ++j) den *= (n + 2 * j);
  return Rational(num, den);
}

double sphere_moment_d(const MultiIndex& alpha, int n) {
  return to_double(sphere_moment(alpha, n));
}

}  // namespace sosvol
