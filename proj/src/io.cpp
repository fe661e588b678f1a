#include "momentflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace momentflow::io {

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json weight_to_json(const WeightVector& w) { return Json(w); }

Json to_json(const MomentValue& m) {
  return Json{{"matrix", to_json(m.matrix)}, {"energy", m.energy}, {"spectrum", to_json(m.spectrum)}};
}

Json to_json(const HesselinkLabel& label) {
  return Json{{"semistable", false},
              {"eta", to_json(label.eta)},
              {"q", to_string(label.q)},
              {"eta_normalized", to_json(label.eta_normalized)},
              {"eta_coordinates", to_json(label.eta_coordinates)}};
}

Json semistable_json() { return Json{{"semistable", true}}; }

Json to_json(const MinNormCertificate& cert) {
  Json support = Json::array();
  for (const auto& s : cert.support) support.push_back(to_json(s));
  Json coeffs = Json::array();
  for (const auto& c : cert.coefficients) coeffs.push_back(to_string(c));
  return Json{{"eta", to_json(cert.eta)},
              {"q", to_string(cert.q)},
              {"support", support},
              {"coefficients", coeffs},
              {"optimality_margin", to_string(cert.optimality_margin)}};
}

Json to_json(const StratumReport& r) {
  Json grading = Json::array();
  for (const auto& [chi, val] : r.grading) grading.push_back(Json{{"weight", weight_to_json(chi)}, {"r", to_string(val)}});
  return Json{{"beta", to_json(r.beta)},       {"q", to_string(r.q)},
              {"grading", grading},            {"in_V_ge0", r.in_V_ge0},
              {"v0", to_json(r.v0)},           {"in_U_ge0", r.in_U_ge0},
              {"matches_optimal_class", r.matches_optimal_class}};
}

Json to_json(const JordanLabel& j) {
  return Json{{"eta", to_json(j.label.eta)},
              {"q", to_string(j.label.q)},
              {"eta_normalized", to_json(j.label.eta_normalized)},
              {"beta_paper", to_json(j.beta_paper)},
              {"q_paper", to_string(j.q_paper)},
              {"q_formula", to_string(j.q_formula)},
              {"display_ok", j.display_ok},
              {"formula_ok", j.formula_ok},
              {"identity_ok", j.identity_ok},
              {"bound_ok", j.bound_ok},
              {"negdef_ok", j.negdef_ok},
              {"max_negdef_eigenvalue", to_string(j.max_negdef_eigenvalue)}};
}

Json to_json(const DerivationReport& d) {
  Json eig = Json::array();
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k)
    eig.push_back(Json::array({d.eigenvalues[k].real(), d.eigenvalues[k].imag()}));
  return Json{{"D", to_json(d.d)},
              {"derivation_residual", d.derivation_residual},
              {"eigenvalues", eig},
              {"all_positive", d.all_positive},
              {"filtration_dims", d.filtration_dims},
              {"preserves_filtration", d.preserves_filtration},
              {"transpose_invariance_residuals", d.transpose_invariance_residuals}};
}

Json to_json(const CriticalBracketCheck& c) {
  return Json{{"beta", to_json(c.beta)},
              {"beta_plus", to_json(c.beta_plus)},
              {"derivation_residual", c.derivation_residual},
              {"is_derivation", c.is_derivation},
              {"positive", c.positive},
              {"trace_beta", c.trace_beta},
              {"orthogonality", c.orthogonality},
              {"orthogonality_ok", c.orthogonality_ok}};
}

Json to_json(const RepVector& v) {
  Json out{{"family", to_string(v.spec.family)}, {"n", v.spec.n}};
  if (v.spec.family == Family::TorusWeights) out["weights"] = v.spec.weights;
  out["coords"] = to_json(v.coords);
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix rows must be arrays of equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be a JSON array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw std::invalid_argument("vector entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_array() && j.size() == 2) {
    auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()); };
    return parse_rational(part(j[0]) + "/" + part(j[1]));
  }
  if (j.is_number_float()) {
    // Floats are only accepted when they are exact in decimal notation.
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return parse_rational(os.str());
  }
  throw std::invalid_argument("cannot read a rational from " + j.dump());
}

RationalVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("rational vector must be a JSON array");
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

RepVector rep_vector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("coords"))
    throw std::invalid_argument("vector document needs \"family\" and \"coords\"");
  RepVector out;
  const Family f = parse_family(j.at("family").get<std::string>());
  if (f == Family::TorusWeights) {
    out.spec = RepSpec::torus(j.at("weights").get<std::vector<WeightVector>>());
  } else {
    out.spec = RepSpec::make(f, j.at("n").get<int>());
  }
  out.coords = vector_from_json(j.at("coords"));
  if (out.coords.size() != rep_dim(out.spec))
    throw std::invalid_argument("coords length does not match the representation dimension");
  return out;
}

std::optional<HesselinkLabel> label_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("label document must be a JSON object");
  if (j.value("semistable", false)) return std::nullopt;
  const auto& key = j.contains("eta_coordinates") ? j.at("eta_coordinates") : j.at("eta");
  return HesselinkLabel::from_eta(rational_vector_from_json(key));
}

std::string read_argument(const std::string& value) {
  if (value == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  if (!value.empty() && value.front() == '@') {
    std::ifstream in(value.substr(1));
    if (!in) throw std::invalid_argument("cannot open " + value.substr(1));
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return value;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace momentflow::io
