#include "fmi/json_io.hpp"

#include <cmath>

namespace fmi {

namespace {

using nlohmann::json;

const json& Field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw JsonFormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double Number(const json& j, const char* what) {
  if (!j.is_number()) throw JsonFormatError(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::vector<double> Numbers(const json& j, const char* what) {
  if (!j.is_array()) throw JsonFormatError(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(Number(x, what));
  return out;
}

std::vector<Complex> Complexes(const json& j, const char* what) {
  if (!j.is_array()) throw JsonFormatError(std::string(what) + ": expected an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(ComplexFromJson(x));
  return out;
}

json MatrixToJson(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(ComplexToJson(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json ComplexToJson(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex ComplexFromJson(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {Number(Field(j, "re"), "re"), Number(Field(j, "im"), "im")};
}

json MeasureToJson(const DiskHerglotz& w) {
  json atoms = json::array();
  for (Complex t : w.measure.atoms()) atoms.push_back(ComplexToJson(t));
  return {{"kind", "circle"}, {"atoms", atoms}, {"weights", w.measure.weights()}, {"c", w.c}};
}

json MeasureToJson(const LineMeasure& sigma) {
  return {{"kind", "line"}, {"atoms", sigma.atoms()}, {"weights", sigma.weights()}};
}

AnyMeasure MeasureFromJson(const json& j) {
  const json& kind = Field(j, "kind");
  if (!kind.is_string()) throw JsonFormatError("measure kind must be a string");
  const auto weights = Numbers(Field(j, "weights"), "weights");
  const json& atoms = Field(j, "atoms");
  if (!atoms.is_array() || atoms.size() != weights.size()) {
    throw JsonFormatError("measure atoms and weights must be arrays of equal length");
  }
  try {
    if (kind == "circle") {
      const double c = j.contains("c") ? Number(j.at("c"), "c") : 0.0;
      return DiskHerglotz{CircleMeasure(Complexes(atoms, "atoms"), weights), c};
    }
    if (kind == "line") return LineMeasure(Numbers(atoms, "atoms"), weights);
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what());
  }
  throw JsonFormatError("unknown measure kind \"" + kind.get<std::string>() + "\"");
}

json ProblemToJson(const NpData& data) {
  json nodes = json::array();
  json values = json::array();
  for (Complex z : data.nodes) nodes.push_back(ComplexToJson(z));
  for (Complex w : data.values) values.push_back(ComplexToJson(w));
  return {{"problem", "np"}, {"nodes", nodes}, {"values", values}};
}

json ProblemToJson(const MomentData& data) {
  return {{"problem", "hamburger"}, {"moments", data.s}};
}

AnyProblem ProblemFromJson(const json& j) {
  const json& kind = Field(j, "problem");
  if (!kind.is_string()) throw JsonFormatError("problem kind must be a string");
  try {
    if (kind == "np") {
      NpData data{Complexes(Field(j, "nodes"), "nodes"), Complexes(Field(j, "values"), "values")};
      ValidateNpData(data);
      return data;
    }
    if (kind == "hamburger") {
      MomentData data{Numbers(Field(j, "moments"), "moments")};
      ValidateMomentData(data);
      return data;
    }
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what());
  }
  throw JsonFormatError("unknown problem kind \"" + kind.get<std::string>() + "\"");
}

json ReportToJson(const CheckReport& report) {
  json out = {{"check_name", report.check_name}, {"verdict", report.verdict}};
  out["min_eigenvalue"] = report.min_eigenvalue ? json(*report.min_eigenvalue) : json(nullptr);
  out["residual"] = report.residual ? json(*report.residual) : json(nullptr);
  out["witness_point"] = report.witness_point ? ComplexToJson(*report.witness_point) : json(nullptr);
  out["details"] = report.details;
  return out;
}

json ReportToJson(const ExtractionReport& report) {
  return {
      {"A_sigma", MatrixToJson(report.A_sigma)},
      {"gap", MatrixToJson(report.gap)},
      {"rho", report.rho},
      {"recovered_moments", report.recovered_moments},
      {"asymptotic_s2n", report.asymptotic_s2n},
      {"y_ladder", report.ladder},
      {"s2n_estimates", report.s2n_estimates},
      {"ladder_converged", report.ladder_converged},
      {"w_limit_error", report.w_limit_error},
      {"growth", report.growth},
      {"gap_min_eigenvalue", report.gap_min_eigenvalue},
      {"annihilation_residual", report.annihilation_residual},
      {"rank_one_residual", report.rank_one_residual},
      {"verdicts",
       {{"gap_psd", report.gap_psd},
        {"gap_annihilated", report.gap_annihilated},
        {"rank_one_gap", report.rank_one_gap},
        {"moments_match", report.moments_match},
        {"top_moment_bound", report.top_moment_bound},
        {"w_limit", report.w_limit},
        {"growth_bound", report.growth_bound}}},
  };
}

}  // namespace fmi
