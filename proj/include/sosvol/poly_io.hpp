#pragma once

#include <string>

#include "sosvol/optimize.hpp"
#include "sosvol/polynomial.hpp"
#include "sosvol/sos.hpp"

namespace sosvol {

/// Polynomial file format:
///   {"n": int, "degree": int, "terms": [{"exps": [int,...], "coef": float}, ...]}
/// Every exponent list must sum to the degree; duplicate lists are an error.
HomogeneousPoly poly_from_json(const std::string& text);
HomogeneousPoly read_poly_file(const std::string& path);
std::string poly_to_json(const HomogeneousPoly& f);

std::string extreme_result_to_json(const ExtremeResult& r);
std::string sos_decision_to_json(const SosDecision& d);

}  // namespace sosvol
