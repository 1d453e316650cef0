#include "oraclelab/cli/config.hpp"

#include <algorithm>
#include <charconv>

#include "oraclelab/qsim/state.hpp"

namespace oraclelab::cli {

namespace {

FieldSpec field(std::string name, FieldType type, Json def, std::string description, Json min = nullptr,
                Json max = nullptr) {
  return {std::move(name), type, false, std::move(def), std::move(description), std::move(min), std::move(max)};
}

FieldSpec required(std::string name, FieldType type, std::string description) {
  return {std::move(name), type, true, nullptr, std::move(description), nullptr, nullptr};
}

FieldSpec seed_field(bool randomized) {
  if (randomized) return required("seed", FieldType::Unsigned, "64-bit master seed");
  return field("seed", FieldType::Unsigned, nullptr, "unused; accepted for uniform sweeps");
}

// trials = 0 marks a single deterministic run without trial or worker fields.
std::vector<FieldSpec> common(bool randomized, int trials) {
  std::vector<FieldSpec> out{seed_field(randomized)};
  if (trials > 0) {
    out.push_back(field("trials", FieldType::Integer, trials, "independent trials", 1));
    out.push_back(field("workers", FieldType::Integer, 1, "worker threads; results do not depend on it", 1, 256));
  }
  out.push_back(field("out", FieldType::String, nullptr, "report path; rows go to <out>.csv"));
  return out;
}

ExperimentSpec make(std::string name, std::string description, bool randomized, int trials,
                    std::vector<FieldSpec> specific) {
  ExperimentSpec e{std::move(name), std::move(description), randomized, std::move(specific)};
  auto c = common(randomized, trials);
  e.fields.insert(e.fields.end(), c.begin(), c.end());
  return e;
}

std::vector<ExperimentSpec> build_catalog() {
  return {
      make("fidelity-dist", "Haar pair fidelities against the closed-form law and the 1/2^n mean", true, 100000,
           {field("n", FieldType::Integer, 2, "qubits", 1, 14)}),
      make("state-diag", "deterministic hard-state enumeration with re-verified certificates", false, 0,
           {field("n", FieldType::Integer, 1, "qubits of the returned state", 1, 14),
            field("f", FieldType::Integer, 1, "longest avoided circuit length", 0),
            field("epsilon", FieldType::Number, 0.5, "fidelity threshold", 0.0, 1.0),
            field("index", FieldType::Unsigned, 0, "index of the hard state"),
            field("budget", FieldType::Unsigned, 100000, "circuit budget over both steps", 1),
            field("gate_set", FieldType::String, "H,T,CNOT", "comma-separated gate kinds")}),
      make("mqst", "random query strategies against the indistinguishability bound", true, 200,
           {field("n", FieldType::Integer, 4, "oracle qubits", 1, 14),
            field("ancillas", FieldType::Integer, 0, "workspace qubits beside the oracle register", 0, 13),
            field("k", FieldType::Integer, 4, "oracle queries per strategy", 1, 64),
            field("depth", FieldType::Integer, 16, "gates per strategy step", 0)}),
      make("grover", "query counts of Grover search and classical probing", true, 101,
           {field("n", FieldType::Integer, 12, "largest string length", 1, 12),
            field("n_min", FieldType::Integer, 4, "smallest string length", 1, 12),
            field("conjugated", FieldType::Boolean, true, "oracle conjugated by Hadamards")}),
      make("protocol", "Arthur-Merlin-oracle transcripts", true, 100,
           {field("n", FieldType::Integer, 6, "marked-state qubits", 1, 14),
            field("kappa", FieldType::Number, 5.0 / 6.0, "acceptance fraction"),
            field("depth", FieldType::Integer, 64, "server circuit depth", 1),
            field("merlin", FieldType::String, "honest", "honest, haar, vacuum or permuted"),
            field("noise", FieldType::Number, 0.0, "per-block replacement probability", 0.0, 1.0),
            field("reply", FieldType::String, "bit", "channel reply: bit or qubit"),
            field("language", FieldType::String, "random", "instance bit: random, yes or no"),
            field("shot_budget", FieldType::Unsigned, 1000000, "honest Merlin shot budget", 1),
            field("transcript_out", FieldType::String, nullptr, "JSONL transcript path")}),
      make("rxhog", "rotated heavy-output scores of quantum and classical solvers", true, 200,
           {field("n", FieldType::Integer, 6, "qubits", 1, 14),
            field("k", FieldType::Integer, 1, "distinct samples per run", 1),
            field("precision", FieldType::Integer, 32, "oracle digits per entry", 1, 64),
            field("probes", FieldType::Integer, -1, "phase-probe |S_ph|; -1 means n^2", -1),
            field("budget", FieldType::Unsigned, 0, "classical query budget; 0 picks a default")}),
  };
}

bool type_matches(FieldType t, const Json& v) {
  switch (t) {
    case FieldType::Integer: return v.is_number_integer();
    case FieldType::Unsigned: return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    case FieldType::Number: return v.is_number();
    case FieldType::Boolean: return v.is_boolean();
    case FieldType::String: return v.is_string();
  }
  return false;
}

void merge(const ExperimentSpec& spec, const Json& src, const std::string& where, Json& into) {
  if (src.is_null()) return;
  if (!src.is_object()) throw ConfigError(where, "must be a JSON object");
  for (const auto& [key, value] : src.items()) {
    const std::string path = where + "." + key;
    if (key == "experiment") {
      if (!value.is_string() || value.get<std::string>() != spec.name) throw ConfigError(path, "must be \"" + spec.name + "\"");
      continue;
    }
    const FieldSpec* f = spec.field(key);
    if (!f) throw ConfigError(path, "unknown field for " + spec.name);
    if (!type_matches(f->type, value)) throw ConfigError(path, "expected " + std::string(to_string(f->type)));
    into[key] = value;
  }
}

bool below(const Json& v, const Json& bound) { return v.get<double>() < bound.get<double>(); }

}  // namespace

std::string_view to_string(FieldType t) {
  switch (t) {
    case FieldType::Integer: return "integer";
    case FieldType::Unsigned: return "unsigned";
    case FieldType::Number: return "number";
    case FieldType::Boolean: return "boolean";
    case FieldType::String: return "string";
  }
  return "?";
}

const FieldSpec* ExperimentSpec::field(std::string_view key) const {
  for (const auto& f : fields)
    if (f.name == key) return &f;
  return nullptr;
}

const std::vector<ExperimentSpec>& experiment_catalog() {
  static const std::vector<ExperimentSpec> catalog = build_catalog();
  return catalog;
}

const ExperimentSpec& experiment_spec(std::string_view name) {
  for (const auto& e : experiment_catalog())
    if (e.name == name) return e;
  throw ConfigError("experiment", "unknown experiment '" + std::string(name) + "'");
}

Json catalog_to_json() {
  Json out = Json::array();
  for (const auto& e : experiment_catalog()) {
    Json fields = Json::array();
    for (const auto& f : e.fields) {
      fields.push_back({{"name", f.name},
                        {"type", std::string(to_string(f.type))},
                        {"required", f.required},
                        {"default", f.default_value},
                        {"description", f.description},
                        {"minimum", f.minimum},
                        {"maximum", f.maximum}});
    }
    out.push_back({{"name", e.name}, {"description", e.description}, {"randomized", e.randomized}, {"fields", fields}});
  }
  return {{"experiments", out}};
}

std::vector<ExperimentSpec> catalog_from_json(const Json& j) {
  std::vector<ExperimentSpec> out;
  for (const auto& e : j.at("experiments")) {
    ExperimentSpec spec{e.at("name").get<std::string>(), e.at("description").get<std::string>(), e.at("randomized").get<bool>(), {}};
    for (const auto& f : e.at("fields")) {
      FieldType type = FieldType::Integer;
      const auto name = f.at("type").get<std::string>();
      for (auto t : {FieldType::Integer, FieldType::Unsigned, FieldType::Number, FieldType::Boolean, FieldType::String})
        if (to_string(t) == name) type = t;
      spec.fields.push_back({f.at("name").get<std::string>(), type, f.at("required").get<bool>(), f.at("default"),
                             f.at("description").get<std::string>(), f.at("minimum"), f.at("maximum")});
    }
    out.push_back(std::move(spec));
  }
  return out;
}

Json resolve_config(const ExperimentSpec& spec, const Json& file, const Json& overrides) {
  Json cfg = Json::object();
  merge(spec, file, "config", cfg);
  merge(spec, overrides, "flags", cfg);
  for (const auto& f : spec.fields) {
    if (!cfg.contains(f.name)) {
      if (f.required) throw ConfigError("config." + f.name, "required field is missing");
      if (f.default_value.is_null()) continue;
      cfg[f.name] = f.default_value;
    }
    const Json& v = cfg[f.name];
    const std::string path = "config." + f.name;
    if (f.name == "n" && v.get<std::int64_t>() > kMaxQubits) {
      throw CapacityError(path + ": " + std::to_string(v.get<std::int64_t>()) + " qubits exceeds the cap of " +
                          std::to_string(kMaxQubits));
    }
    if (!f.minimum.is_null() && v.is_number() && below(v, f.minimum)) throw ConfigError(path, "must be >= " + f.minimum.dump());
    if (!f.maximum.is_null() && v.is_number() && below(f.maximum, v)) throw ConfigError(path, "must be <= " + f.maximum.dump());
  }
  return cfg;
}

Json parse_field_value(const FieldSpec& f, const std::string& text, const std::string& path) {
  auto whole = [&](auto& value) {
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) throw ConfigError(path, "expected " + std::string(to_string(f.type)) + ", got '" + text + "'");
  };
  switch (f.type) {
    case FieldType::Integer: {
      std::int64_t v = 0;
      whole(v);
      return v;
    }
    case FieldType::Unsigned: {
      std::uint64_t v = 0;
      whole(v);
      return v;
    }
    case FieldType::Number: {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
      } catch (const std::exception&) {
      }
      throw ConfigError(path, "expected number, got '" + text + "'");
    }
    case FieldType::Boolean:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ConfigError(path, "expected true or false, got '" + text + "'");
    case FieldType::String: return text;
  }
  return nullptr;
}

}  // namespace oraclelab::cli
