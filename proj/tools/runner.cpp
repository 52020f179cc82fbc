#include "runner.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gadgetlab/errors.hpp"
#include "params.hpp"

#ifndef GADGETLAB_VERSION
#define GADGETLAB_VERSION "0.0.0"
#endif

namespace gadgetlab::cli {

using nlohmann::json;

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::uint64_t config_hash(const json& effective) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : effective.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
}

std::string render_csv(const Table& t, const std::string& kind, const std::string& hash, std::uint64_t seed) {
  std::ostringstream out;
  out << "# gadgetlab " << GADGETLAB_VERSION << "\n"
      << "# kind: " << kind << "\n"
      << "# config_hash: " << hash << "\n"
      << "# seed: " << seed << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

bool all_pass(const json& checks) {
  for (const auto& [name, entry] : checks.items()) {
    if (entry.contains("pass") && !entry["pass"].get<bool>()) return false;
  }
  return true;
}

std::string error_line(int code, const std::string& type, const std::string& message) {
  return json{{"error", {{"code", code}, {"type", type}, {"message", message}}}}.dump();
}

}  // namespace

Outcome run(const Invocation& inv) {
  Outcome out;
  try {
    const json config = load_config(inv.config);
    Params top(config, "config");
    if (std::find(kKinds.begin(), kKinds.end(), inv.kind) == kKinds.end()) {
      throw InvalidInput("unknown experiment kind '" + inv.kind + "'");
    }
    if (top.has("kind") && top.text("kind") != inv.kind) {
      throw InvalidInput("config kind '" + config["kind"].get<std::string>() + "' does not match '" + inv.kind + "'");
    }
    std::uint64_t seed = 0;
    if (top.has("seed")) {
      const json& s = top.raw("seed");
      if (!s.is_number_unsigned()) throw InvalidInput("config.seed must be a non-negative integer");
      seed = s.get<std::uint64_t>();
    }
    if (inv.seed) seed = *inv.seed;
    std::filesystem::path csv = top.text("out_path", inv.kind + ".csv");
    if (inv.out) csv = *inv.out;
    const json parameters = top.has("parameters") ? top.raw("parameters") : json::object();
    top.finish();
    const int jobs = inv.jobs.value_or(1);
    if (jobs < 1) throw InvalidInput("--jobs must be at least 1");

    const Experiment experiment = prepare(inv.kind, parameters);
    const json effective{{"kind", inv.kind}, {"seed", seed}, {"parameters", parameters}};
    char hash[32];
    std::snprintf(hash, sizeof hash, "fnv1a64:%016llx", static_cast<unsigned long long>(config_hash(effective)));

    const ExperimentResult result = experiment(Context{seed, jobs});

    out.summary = {{"tool", "gadgetlab"},        {"version", GADGETLAB_VERSION},
                   {"kind", inv.kind},           {"seed", seed},
                   {"config_hash", hash},        {"rows", result.table.rows.size()},
                   {"checks", result.checks},    {"pass", all_pass(result.checks)}};
    out.csv_path = csv;
    out.summary_path = std::filesystem::path(csv).replace_extension(".summary.json");
    const std::string body = render_csv(result.table, inv.kind, hash, seed);
    write_file(out.csv_path, body);
    write_file(out.summary_path, out.summary.dump(2) + "\n");
  } catch (const DimensionError& e) {
    out.exit_code = 3;
    out.error_json = error_line(3, "dimension", e.what());
  } catch (const NumericalAmbiguity& e) {
    out.exit_code = 4;
    out.error_json = error_line(4, "numerical", e.what());
  } catch (const InvalidInput& e) {
    out.exit_code = 2;
    out.error_json = error_line(2, "schema", e.what());
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error_json = error_line(1, "internal", e.what());
  }
  return out;
}

}  // namespace gadgetlab::cli
