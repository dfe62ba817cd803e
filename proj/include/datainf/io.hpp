#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "datainf/hankel.hpp"
#include "datainf/lti.hpp"

namespace datainf {

using nlohmann::json;

enum class DataFormat { Csv, Json };

/// CSV with header t,u1..um,y1..yp and one row per time step; one sequence.
/// @throws Error ParseError (message carries line and field), DimensionMismatch
DataSetD parse_csv(std::istream& in);
std::string to_csv(const DataSetD& ds);

/// {"m", "p", "sampling_time", "sequences": [{"u": [[...]], "y": [[...]]}]}
DataSetD dataset_from_json(const json& j);
json dataset_to_json(const DataSetD& ds);

/// Reads a file; format from the argument.
DataSetD ingest(const std::string& path, DataFormat format);
/// Format from the extension (.json, otherwise CSV).
DataSetD ingest(const std::string& path);

/// System JSON: {"continuous": bool, "A": [[...]], "B": ..., "C": ..., "D": ...}
struct SystemRecord {
  bool continuous = false;
  MatrixXd A, B, C, D;

  DiscreteStateSpace discrete() const { return {A, B, C, D}; }
  ContinuousStateSpace continuous_system() const { return {A, B, C, D}; }
};

SystemRecord system_from_json(const json& j);
json system_to_json(const SystemRecord& s);
template <typename Domain>
json system_to_json(const StateSpace<double, Domain>& s);

json matrix_to_json(const MatrixXd& M);
/// Column count taken from cols_hint when the array is empty.
MatrixXd matrix_from_json(const json& j, Eigen::Index cols_hint = 0);

struct Condition {
  std::string name;
  bool passed = false;
};

/// Command result. Payload fields appear at the top level of the JSON object.
struct AnalysisReport {
  std::string command;
  json payload = json::object();
  ToleranceConfig tolerances_used;
  std::vector<Condition> conditions;
  std::vector<std::string> warnings;

  json to_json() const;
  static AnalysisReport from_json(const json& j);
  /// Human-readable rendering.
  std::string to_text() const;
};

}  // namespace datainf
