#include "oraclelab/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oraclelab/cli/report_schema_text.hpp"

namespace oraclelab::cli {

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

bool has_type(const Json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "null") return v.is_null();
  return false;
}

}  // namespace

bool Report::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Json Report::to_json() const {
  Json v = Json::array();
  for (const auto& x : verdicts) v.push_back({{"invariant", x.invariant}, {"pass", x.pass}, {"detail", x.detail}});
  return {{"schema_version", kReportSchemaVersion},
          {"tool", "oraclelab"},
          {"experiment", experiment},
          {"config", config},
          {"aggregates", aggregates},
          {"verdicts", v},
          {"columns", columns},
          {"rows", rows}};
}

std::string Report::csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

const Json& report_schema() {
  static const Json schema = Json::parse(kReportSchemaText);
  return schema;
}

std::vector<std::string> validate_schema(const Json& doc, const Json& schema, const std::string& path) {
  std::vector<std::string> errors;
  if (schema.contains("const") && doc != schema["const"]) errors.push_back(path + ": expected " + schema["const"].dump());
  if (schema.contains("enum")) {
    const auto& options = schema["enum"];
    if (std::find(options.begin(), options.end(), doc) == options.end()) errors.push_back(path + ": " + doc.dump() + " not in enum");
  }
  if (schema.contains("type") && !has_type(doc, schema["type"].get<std::string>())) {
    errors.push_back(path + ": expected " + schema["type"].get<std::string>());
    return errors;
  }
  if (doc.is_object()) {
    for (const auto& key : schema.value("required", Json::array())) {
      if (!doc.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
    }
    const Json props = schema.value("properties", Json::object());
    for (const auto& [key, value] : doc.items()) {
      if (props.contains(key)) {
        auto sub = validate_schema(value, props[key], path + "." + key);
        errors.insert(errors.end(), sub.begin(), sub.end());
      } else if (schema.value("additionalProperties", true) == false) {
        errors.push_back(path + ": unexpected field " + key);
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      auto sub = validate_schema(doc[i], schema["items"], path + "[" + std::to_string(i) + "]");
      errors.insert(errors.end(), sub.begin(), sub.end());
    }
  }
  return errors;
}

}  // namespace oraclelab::cli
