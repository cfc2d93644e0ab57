#pragma once

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "fmi/hamburger_fmi.hpp"
#include "fmi/measures.hpp"
#include "fmi/np_fmi.hpp"
#include "fmi/realization.hpp"

namespace fmi {

/// Raised for malformed or inconsistent JSON payloads.
class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json ComplexToJson(Complex z);
Complex ComplexFromJson(const nlohmann::json& j);

/// {"kind":"circle","atoms":[{"re","im"}...],"weights":[...],"c":...}
nlohmann::json MeasureToJson(const DiskHerglotz& w);
/// {"kind":"line","atoms":[...],"weights":[...]}
nlohmann::json MeasureToJson(const LineMeasure& sigma);

using AnyMeasure = std::variant<DiskHerglotz, LineMeasure>;
AnyMeasure MeasureFromJson(const nlohmann::json& j);

/// {"problem":"np","nodes":[...],"values":[...]}
nlohmann::json ProblemToJson(const NpData& data);
/// {"problem":"hamburger","moments":[...]}
nlohmann::json ProblemToJson(const MomentData& data);

using AnyProblem = std::variant<NpData, MomentData>;
AnyProblem ProblemFromJson(const nlohmann::json& j);

nlohmann::json ReportToJson(const CheckReport& report);
nlohmann::json ReportToJson(const ExtractionReport& report);

}  // namespace fmi
