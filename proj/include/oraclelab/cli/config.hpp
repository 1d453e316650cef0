#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "oraclelab/qsim/errors.hpp"

namespace oraclelab::cli {

using Json = nlohmann::json;

/// Invalid configuration; the message starts with the offending field path.
class ConfigError : public InvalidInput {
 public:
  ConfigError(const std::string& path, const std::string& message) : InvalidInput(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class FieldType { Integer, Unsigned, Number, Boolean, String };

std::string_view to_string(FieldType t);

struct FieldSpec {
  std::string name;
  FieldType type = FieldType::Integer;
  bool required = false;
  Json default_value;  // null when there is no default
  std::string description;
  Json minimum;  // inclusive bounds, null when open
  Json maximum;
};

struct ExperimentSpec {
  std::string name;
  std::string description;
  bool randomized = true;
  std::vector<FieldSpec> fields;

  const FieldSpec* field(std::string_view name) const;
};

const std::vector<ExperimentSpec>& experiment_catalog();
const ExperimentSpec& experiment_spec(std::string_view name);

Json catalog_to_json();
std::vector<ExperimentSpec> catalog_from_json(const Json& j);

/// Merges `file` (may be null) and `overrides` (flags win), rejects unknown or mistyped
/// fields with their path, fills defaults, and checks required fields and ranges.
/// A qubit count above the register cap raises CapacityError.
Json resolve_config(const ExperimentSpec& spec, const Json& file, const Json& overrides);

/// Parses a flag value according to the field type.
Json parse_field_value(const FieldSpec& field, const std::string& text, const std::string& path);

}  // namespace oraclelab::cli
