#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sosvol {

// Exact rational arithmetic for sphere moments and Gram matrices.
// cpp_rational keeps the denominator positive and the fraction reduced.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace sosvol
