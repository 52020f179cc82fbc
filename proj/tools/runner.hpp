#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gadgetlab::cli {

inline const std::vector<std::string> kKinds = {"gadget-verify", "gadget-sweep",    "gadget-combine", "zeno-sweep",
                                                "zeno-simulate", "lightcone-sweep", "boolfun",        "energy-bound"};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  Table table;
  nlohmann::json checks = nlohmann::json::object();  // name -> measurement, optionally with "pass"
};

struct Context {
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Validates the parameters of `kind` and returns the computation to run.
// Throws InvalidInput on schema violations; nothing is computed here.
using Experiment = std::function<ExperimentResult(const Context&)>;
Experiment prepare(const std::string& kind, const nlohmann::json& parameters);

struct Invocation {
  std::string kind;
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  int exit_code = 0;
  std::string error_json;  // one line, empty on success
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  nlohmann::json summary;
};

// Loads the config, applies flag overrides, runs and writes the CSV and the
// summary JSON. Files are written only when the run succeeds.
Outcome run(const Invocation& inv);

// FNV-1a over the canonical dump of {kind, seed, parameters}.
std::uint64_t config_hash(const nlohmann::json& effective);

std::string format_number(double x);

}  // namespace gadgetlab::cli
