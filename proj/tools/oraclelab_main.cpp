#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "oraclelab/cli/config.hpp"
#include "oraclelab/cli/experiments.hpp"
#include "oraclelab/cli/report.hpp"

namespace {

using namespace oraclelab;
using cli::Json;

enum Exit { kOk = 0, kVerdictFailed = 1, kConfigError = 2, kCapacity = 3, kRuntime = 4 };

std::string flag_name(const std::string& field) {
  std::string out = field;
  for (char& c : out)
    if (c == '_') c = '-';
  return "--" + out;
}

Json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::ConfigError(path, "cannot open config file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw cli::ConfigError(path, e.what());
  }
}

std::string csv_path(std::string out) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) out.resize(out.size() - ext.size());
  return out + ".csv";
}

int run(const cli::ExperimentSpec& spec, const std::string& config_path, const std::map<std::string, std::string>& flags) {
  const Json file = config_path.empty() ? Json(nullptr) : read_config_file(config_path);
  Json overrides = Json::object();
  for (const auto& [name, text] : flags) {
    overrides[name] = cli::parse_field_value(*spec.field(name), text, flag_name(name));
  }
  const Json cfg = cli::resolve_config(spec, file, overrides);

  const auto start = std::chrono::steady_clock::now();
  const cli::Report report = cli::run_experiment(spec.name, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Json doc = report.to_json();
  const auto errors = cli::validate_schema(doc, cli::report_schema());
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "schema: " << e << "\n";
    return kRuntime;
  }
  if (cfg.contains("out")) {
    const auto out = cfg["out"].get<std::string>();
    std::ofstream(out, std::ios::binary) << doc.dump(2) << "\n";
    std::ofstream(csv_path(out), std::ios::binary) << report.csv();
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  for (const auto& v : report.verdicts) std::cerr << (v.pass ? "PASS " : "FAIL ") << v.invariant << ": " << v.detail << "\n";
  std::cerr << "wall-clock " << seconds << " s\n";
  return report.all_pass() ? kOk : kVerdictFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oraclelab: oracle separation experiments"};
  app.require_subcommand(1);

  app.add_subcommand("list", "print the experiment catalog as JSON");

  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& spec : cli::experiment_catalog()) {
    auto* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--config", config_path, "JSON config file; flags override its fields");
    for (const auto& f : spec.fields) {
      sub->add_option_function<std::string>(
          flag_name(f.name), [&values, &spec, name = f.name](const std::string& v) { values[spec.name][name] = v; },
          f.description);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  const auto* chosen = app.get_subcommands().front();
  if (chosen->get_name() == "list") {
    std::cout << cli::catalog_to_json().dump(2) << "\n";
    return kOk;
  }
  try {
    return run(cli::experiment_spec(chosen->get_name()), config_path, values[chosen->get_name()]);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
