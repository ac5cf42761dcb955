#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cgolab/config.hpp"
#include "cgolab/errors.hpp"
#include "cgolab/scenarios.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kNumericalError = 3;

void print_summary(const cgolab::Report& r) {
  for (const auto& rec : r.records) {
    if (!rec.error.empty()) {
      std::printf("%-4s %-28s ERROR %s\n", rec.id.c_str(), rec.name.c_str(), rec.error.c_str());
      continue;
    }
    std::printf("%-4s %-28s %s  value=%.4g %s %.4g\n", rec.id.c_str(), rec.name.c_str(),
                rec.pass ? "PASS" : "FAIL", rec.value, rec.relation.c_str(), rec.threshold);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgolab: verification scenarios for first-order perturbed Laplacians"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "cgolab-report";
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::optional<int> jobs;

  for (const auto& name : cgolab::scenario_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " checks");
    sub->add_option("--config", config_path, "JSONC config file (defaults if omitted)");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));
  }
  app.add_subcommand("print-config", "print the default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (app.got_subcommand("print-config")) {
    std::cout << cgolab::default_config_tree().dump(2) << "\n";
    return 0;
  }
  const std::string scenario = app.get_subcommands().front()->get_name();

  cgolab::Config cfg;
  try {
    if (!config_path.empty()) cfg = cgolab::Config::load(config_path);
    if (seed) cfg.set_seed(*seed);
    if (jobs) cfg.set_jobs(*jobs);
  } catch (const cgolab::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kUsageError;
  }

  try {
    const cgolab::Report report = cgolab::run_scenario(scenario, cfg);
    print_summary(report);
    cgolab::emit(report, out_dir, cgolab::report_format_from_string(format));
    return cgolab::exit_code(report);
  } catch (const cgolab::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kNumericalError;
  }
}
