#include <iostream>

#include <CLI11.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  using namespace gadgetlab::cli;
  CLI::App app{"Gadget, Zeno and light-cone experiment runner"};
  app.set_version_flag("--version", GADGETLAB_VERSION);
  Invocation inv;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string out;
  app.add_option("kind", inv.kind, "Experiment kind")->required()->check(CLI::IsMember(kKinds));
  app.add_option("--config", inv.config, "Experiment config (JSON)")->required();
  auto* out_opt = app.add_option("--out", out, "CSV output path; the summary goes next to it");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads for independent sweep points");
  auto* seed_opt = app.add_option("--seed", seed, "Overrides the config seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::json{{"error", {{"code", 2}, {"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  if (*out_opt) inv.out = out;
  if (*jobs_opt) inv.jobs = jobs;
  if (*seed_opt) inv.seed = seed;

  const Outcome outcome = run(inv);
  if (outcome.exit_code != 0) {
    std::cerr << outcome.error_json << "\n";
    return outcome.exit_code;
  }
  std::cout << outcome.csv_path.string() << "\n" << outcome.summary_path.string() << "\n";
  return 0;
}
