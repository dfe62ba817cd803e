#include "datainf/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace datainf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void parse_error(std::size_t line, std::size_t field, const std::string& what) {
  fail(Errc::ParseError,
       "line " + std::to_string(line) + ", field " + std::to_string(field) + ": " + what);
}

double parse_number(const std::string& s, std::size_t line, std::size_t field) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) parse_error(line, field, "not a number: '" + s + "'");
  return v;
}

/// Index k from a column name like "u3"; 0 if the name does not match.
int channel_index(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return 0;
  int k = 0;
  const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
  return (ec == std::errc() && ptr == name.data() + name.size()) ? k : 0;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DataSetD parse_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) parse_error(lineno, 0, "missing header");
  if (header[0] != "t") parse_error(lineno, 1, "first column must be 't'");
  int m = 0, p = 0;
  for (std::size_t f = 1; f < header.size(); ++f) {
    if (channel_index(header[f], 'u') == m + 1 && p == 0) {
      ++m;
    } else if (channel_index(header[f], 'y') == p + 1) {
      ++p;
    } else {
      parse_error(lineno, f + 1, "expected u" + std::to_string(m + 1) + " or y" +
                                     std::to_string(p + 1) + ", got '" + header[f] + "'");
    }
  }
  if (p == 0) parse_error(lineno, header.size(), "header has no output columns");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      parse_error(lineno, std::min(fields.size(), header.size()) + 1,
                  "expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t f = 0; f < fields.size(); ++f) row[f] = parse_number(fields[f], lineno, f + 1);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error(lineno, 0, "no data rows");

  const auto T = static_cast<Eigen::Index>(rows.size());
  TrajectoryD tr{MatrixXd(T, m), MatrixXd(T, p)};
  for (Eigen::Index t = 0; t < T; ++t) {
    const auto& r = rows[static_cast<std::size_t>(t)];
    for (int k = 0; k < m; ++k) tr.u(t, k) = r[static_cast<std::size_t>(1 + k)];
    for (int i = 0; i < p; ++i) tr.y(t, i) = r[static_cast<std::size_t>(1 + m + i)];
  }
  DataSetD ds{m, p, {std::move(tr)}, std::nullopt};
  ds.validate();
  return ds;
}

std::string to_csv(const DataSetD& ds) {
  ds.validate();
  if (ds.sequences.size() != 1) fail(Errc::InvalidArgument, "CSV holds exactly one sequence");
  const auto& tr = ds.sequences.front();
  std::ostringstream out;
  out << "t";
  for (Eigen::Index k = 0; k < ds.m; ++k) out << ",u" << k + 1;
  for (Eigen::Index i = 0; i < ds.p; ++i) out << ",y" << i + 1;
  out << "\n";
  for (Eigen::Index t = 0; t < tr.length(); ++t) {
    out << t;
    for (Eigen::Index k = 0; k < ds.m; ++k) out << "," << format_double(tr.u(t, k));
    for (Eigen::Index i = 0; i < ds.p; ++i) out << "," << format_double(tr.y(t, i));
    out << "\n";
  }
  return out.str();
}

json matrix_to_json(const MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const json& j, Eigen::Index cols_hint) {
  if (!j.is_array()) fail(Errc::ParseError, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return MatrixXd(0, cols_hint);
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(Errc::ParseError, "matrix row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) fail(Errc::ParseError, "matrix entry is not a number");
      M(i, c) = v.get<double>();
    }
  }
  return M;
}

DataSetD dataset_from_json(const json& j) {
  try {
    DataSetD ds;
    ds.m = j.at("m").get<Eigen::Index>();
    ds.p = j.at("p").get<Eigen::Index>();
    if (j.contains("sampling_time") && !j["sampling_time"].is_null()) {
      ds.sampling_time = j["sampling_time"].get<double>();
    }
    for (const auto& s : j.at("sequences")) {
      ds.sequences.push_back({matrix_from_json(s.at("u"), ds.m), matrix_from_json(s.at("y"), ds.p)});
    }
    ds.validate();
    return ds;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("dataset JSON: ") + e.what());
  }
}

json dataset_to_json(const DataSetD& ds) {
  json j;
  j["m"] = ds.m;
  j["p"] = ds.p;
  j["sampling_time"] = ds.sampling_time ? json(*ds.sampling_time) : json(nullptr);
  j["sequences"] = json::array();
  for (const auto& tr : ds.sequences) {
    j["sequences"].push_back({{"u", matrix_to_json(tr.u)}, {"y", matrix_to_json(tr.y)}});
  }
  return j;
}

DataSetD ingest(const std::string& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  if (format == DataFormat::Csv) return parse_csv(in);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
  return dataset_from_json(j);
}

DataSetD ingest(const std::string& path) {
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return ingest(path, is_json ? DataFormat::Json : DataFormat::Csv);
}

SystemRecord system_from_json(const json& j) {
  try {
    SystemRecord s;
    s.continuous = j.value("continuous", false);
    s.A = matrix_from_json(j.at("A"));
    const Eigen::Index n = s.A.rows();
    s.B = matrix_from_json(j.at("B"));
    s.C = matrix_from_json(j.at("C"), n);
    s.D = matrix_from_json(j.at("D"), s.B.cols());
    if (n == 0) {
      s.B.resize(0, s.D.cols());
      s.C.resize(s.D.rows(), 0);
    }
    s.discrete().validate();
    return s;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("system JSON: ") + e.what());
  }
}

json system_to_json(const SystemRecord& s) {
  return {{"continuous", s.continuous}, {"A", matrix_to_json(s.A)}, {"B", matrix_to_json(s.B)},
          {"C", matrix_to_json(s.C)},   {"D", matrix_to_json(s.D)}};
}

template <typename Domain>
json system_to_json(const StateSpace<double, Domain>& s) {
  return system_to_json(
      SystemRecord{std::is_same_v<Domain, ContinuousTime>, s.A, s.B, s.C, s.D});
}

template json system_to_json<DiscreteTime>(const DiscreteStateSpace&);
template json system_to_json<ContinuousTime>(const ContinuousStateSpace&);

namespace {
const char* const kReserved[] = {"command", "conditions", "tolerances_used", "warnings"};
}

json AnalysisReport::to_json() const {
  json j = payload.is_object() ? payload : json::object();
  j["command"] = command;
  j["tolerances_used"] = {{"rank_rtol", tolerances_used.rank_rtol},
                          {"membership_rtol", tolerances_used.membership_rtol},
                          {"stability_margin", tolerances_used.stability_margin},
                          {"match_atol", tolerances_used.match_atol}};
  j["conditions"] = json::array();
  for (const auto& c : conditions) j["conditions"].push_back({{"name", c.name}, {"passed", c.passed}});
  j["warnings"] = warnings;
  return j;
}

AnalysisReport AnalysisReport::from_json(const json& j) {
  try {
    AnalysisReport r;
    r.command = j.at("command").get<std::string>();
    const auto& t = j.at("tolerances_used");
    r.tolerances_used.rank_rtol = t.at("rank_rtol").get<double>();
    r.tolerances_used.membership_rtol = t.at("membership_rtol").get<double>();
    r.tolerances_used.stability_margin = t.at("stability_margin").get<double>();
    r.tolerances_used.match_atol = t.at("match_atol").get<double>();
    for (const auto& c : j.at("conditions")) {
      r.conditions.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>()});
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool reserved = false;
      for (const char* k : kReserved) reserved = reserved || it.key() == k;
      if (!reserved) r.payload[it.key()] = it.value();
    }
    return r;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("report JSON: ") + e.what());
  }
}

std::string AnalysisReport::to_text() const {
  std::ostringstream out;
  out << command << "\n";
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    out << "  " << it.key() << ": " << it.value().dump() << "\n";
  }
  if (!conditions.empty()) {
    out << "conditions:\n";
    for (const auto& c : conditions) out << "  [" << (c.passed ? "x" : " ") << "] " << c.name << "\n";
  }
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace datainf
