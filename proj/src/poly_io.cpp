#include "sosvol/poly_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sosvol {

using nlohmann::json;
using nlohmann::ordered_json;

HomogeneousPoly poly_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("polynomial file: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("degree") || !j.contains("terms"))
    throw std::invalid_argument("polynomial file: need fields n, degree, terms");
  const int n = j.at("n").get<int>();
  const int degree = j.at("degree").get<int>();
  if (n < 1 || degree < 0)
    throw std::invalid_argument("polynomial file: need n >= 1 and degree >= 0");
  HomogeneousPoly f(n, degree);
  std::vector<bool> seen(f.basis().size(), false);
  for (const auto& term : j.at("terms")) {
    if (!term.contains("exps") || !term.contains("coef"))
      throw std::invalid_argument("polynomial file: each term needs exps and coef");
    MultiIndex alpha(term.at("exps").get<std::vector<int>>());
    if (alpha.size() != n)
      throw std::invalid_argument("polynomial file: exponent list has wrong length");
    for (int i = 0; i < n; ++i)
      if (alpha[i] < 0)
        throw std::invalid_argument("polynomial file: negative exponent");
    if (alpha.degree() != degree)
      throw std::invalid_argument("polynomial file: exponents must sum to degree");
    const std::ptrdiff_t idx = f.basis().index_of(alpha);
    if (seen[static_cast<std::size_t>(idx)])
      throw std::invalid_argument("polynomial file: duplicate exponent list");
    seen[static_cast<std::size_t>(idx)] = true;
    const double coef = term.at("coef").get<double>();
    if (!std::isfinite(coef))
      throw std::invalid_argument("polynomial file: coefficient is not finite");
    f.set_coef(alpha, coef);
  }
  return f;
}

HomogeneousPoly read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open polynomial file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return poly_from_json(buf.str());
}

std::string poly_to_json(const HomogeneousPoly& f) {
  ordered_json j;
  j["n"] = f.nvars();
  j["degree"] = f.degree();
  j["terms"] = ordered_json::array();
  const auto& b = f.basis();
  for (std::size_t t = 0; t < b.size(); ++t) {
    const double c = f.coeffs()[static_cast<Eigen::Index>(t)];
    if (c == 0.0) continue;
    j["terms"].push_back({{"exps", b[t].exponents}, {"coef", c}});
  }
  return j.dump(2) + "\n";
}

std::string extreme_result_to_json(const ExtremeResult& r) {
  ordered_json j;
  j["value"] = r.value;
  j["argpoint"] = r.argpoint;
  j["starts_converged"] = r.starts_converged;
  j["certified"] = r.certified;
  return j.dump(2) + "\n";
}

std::string sos_decision_to_json(const SosDecision& d) {
  ordered_json j;
  switch (d.status) {
    case SosStatus::sos: j["status"] = "sos"; break;
    case SosStatus::not_sos: j["status"] = "not_sos"; break;
    case SosStatus::undecided: j["status"] = "undecided"; break;
  }
  if (d.certificate) {
    const auto& g = d.certificate->gram;
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(g(i, c));
      rows.push_back(std::move(row));
    }
    j["gram"] = std::move(rows);
    j["residual"] = d.certificate->residual;
  }
  if (d.refutation) {
    j["functional"] = d.refutation->functional;
    j["value_on_f"] = d.refutation->value_on_f;
    j["moment_min_eig"] = d.refutation->moment_matrix_min_eig;
  }
  j["iterations"] = d.iterations;
  return j.dump(2) + "\n";
}

}  // namespace sosvol
