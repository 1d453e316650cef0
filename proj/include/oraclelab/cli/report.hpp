#pragma once

#include <string>
#include <vector>

#include "oraclelab/cli/config.hpp"

namespace oraclelab::cli {

inline constexpr int kReportSchemaVersion = 1;

struct Verdict {
  std::string invariant;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string experiment;
  Json config;
  Json aggregates = Json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> columns;
  std::vector<Json> rows;  // one JSON array per row, aligned with columns

  bool all_pass() const;
  Json to_json() const;
  /// Header row then one line per row; strings are quoted when they need it.
  std::string csv() const;
};

/// The bundled report schema (schemas/report.schema.json).
const Json& report_schema();

/// Errors of `doc` against a JSON Schema subset: type, const, enum, required,
/// properties, additionalProperties (boolean), items. Empty when valid.
std::vector<std::string> validate_schema(const Json& doc, const Json& schema, const std::string& path = "$");

}  // namespace oraclelab::cli
