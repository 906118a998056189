#pragma once

#include "sosvol/multi_index.hpp"
#include "sosvol/rational.hpp"

namespace sosvol {

/// Exact moment of a monomial against the rotation-invariant probability
/// measure on S^{n-1}:
///   integral of x^alpha  =  0                                   if any a_i is odd,
///                           prod_i (2a_i - 1)!! / prod_{j<|a|} (n + 2j)   if alpha = 2a.
Rational sphere_moment(const MultiIndex& alpha, int n);

/// Same moment as a double.
double sphere_moment_d(const MultiIndex& alpha, int n);

/// Odd double factorial (2m-1)!! as an exact integer, with (-1)!! = 1.
BigInt odd_double_factorial(int m);

}  // namespace sosvol
