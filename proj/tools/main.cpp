#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "coemo/harness.hpp"
#include "coemo/kernels.hpp"

namespace {

namespace fs = std::filesystem;
using coemo::harness::RunConfig;

// Shared --config/--seed/--out handling: file first, flags override.
struct CommonOpts {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (flat TOML)");
  cmd->add_option("--out", opts.out, "output directory");
  cmd->add_option("--seed", opts.seed, "random seed")->each([&](const std::string&) {
    opts.seed_set = true;
  });
}

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = coemo::harness::load_config_file(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed;
  if (!opts.out.empty()) cfg.out_dir = opts.out;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coemo: emotion category co-construction simulator"};
  app.require_subcommand(0, 1);

  auto* backend = app.add_subcommand("backend", "print the active compute backend");

  CommonOpts gen_opts;
  auto* gen = app.add_subcommand("gen-data", "emit the synthetic dataset as CSV files");
  add_common(gen, gen_opts);

  CommonOpts run_opts;
  std::string run_scenario, run_condition;
  auto* run = app.add_subcommand("run", "run a single experiment into a run directory");
  add_common(run, run_opts);
  run->add_option("--scenario", run_scenario, "mhng | always_reject | always_accept");
  run->add_option("--condition", run_condition, "condition preset name");

  CommonOpts sweep_opts;
  std::string sweep_seeds, sweep_scenarios, sweep_conditions;
  int sweep_workers = -1;
  auto* sweep = app.add_subcommand("sweep", "run scenarios x conditions x seeds, then aggregate");
  add_common(sweep, sweep_opts);
  sweep->add_option("--seeds", sweep_seeds, "seed list, e.g. 0-9 or 1,3,5");
  sweep->add_option("--scenarios", sweep_scenarios, "comma-separated scenario list");
  sweep->add_option("--conditions", sweep_conditions, "comma-separated condition list");
  sweep->add_option("--workers", sweep_workers, "concurrent runs (0 = hardware)");

  CommonOpts report_opts;
  auto* report = app.add_subcommand("report", "aggregate existing run directories");
  add_common(report, report_opts);

  CommonOpts plot_opts;
  auto* plot = app.add_subcommand("plot", "render SVG heatmaps and PCA from a run checkpoint");
  add_common(plot, plot_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (backend->parsed()) {
      std::printf("%s\n", coemo::kernels::backend_name(coemo::kernels::active_backend()));
      return 0;
    }
    if (gen->parsed()) {
      RunConfig cfg = resolve_config(gen_opts);
      const std::string dir = gen_opts.out.empty() ? "dataset" : gen_opts.out;
      coemo::harness::write_dataset(cfg, dir);
      std::printf("dataset written to %s\n", dir.c_str());
      return 0;
    }
    if (run->parsed()) {
      RunConfig cfg = resolve_config(run_opts);
      if (!run_scenario.empty()) cfg.scenario = run_scenario;
      if (!run_condition.empty()) cfg.condition = run_condition;
      const auto rec = coemo::harness::execute_run(cfg, cfg.out_dir);
      std::printf("run complete: %s\n", cfg.out_dir.c_str());
      for (const auto& [key, value] : rec.metrics) std::printf("  %s = %.6f\n", key.c_str(), value);
      return 0;
    }
    if (sweep->parsed()) {
      RunConfig cfg = resolve_config(sweep_opts);
      if (!sweep_seeds.empty()) cfg.sweep_seeds = sweep_seeds;
      if (!sweep_scenarios.empty()) cfg.sweep_scenarios = sweep_scenarios;
      if (!sweep_conditions.empty()) cfg.sweep_conditions = sweep_conditions;
      if (sweep_workers >= 0) cfg.workers = sweep_workers;
      cfg.validate();
      const auto summary = coemo::harness::sweep(cfg, cfg.out_dir);
      const std::string text = coemo::harness::summary_to_json(summary);
      const fs::path path = fs::path(cfg.out_dir) / "summary.json";
      std::ofstream f(path);
      f << text << '\n';
      if (!f) throw std::runtime_error("cannot write " + path.string());
      std::printf("%s\n", text.c_str());
      return 0;
    }
    if (report->parsed()) {
      const std::string root = report_opts.out.empty() ? "runs" : report_opts.out;
      std::vector<coemo::harness::RunRecord> records;
      std::vector<fs::path> dirs;
      if (fs::exists(fs::path(root) / coemo::harness::kConfigFile)) {
        dirs.push_back(root);
      } else if (fs::is_directory(root)) {
        for (const auto& entry : fs::directory_iterator(root))
          if (entry.is_directory() &&
              fs::exists(entry.path() / coemo::harness::kConfigFile))
            dirs.push_back(entry.path());
      }
      std::sort(dirs.begin(), dirs.end());
      if (dirs.empty()) throw std::runtime_error("no run directories under " + root);
      for (const auto& dir : dirs)
        records.push_back(coemo::harness::load_run_dir(dir.string()));
      const auto summary = coemo::harness::aggregate(records);
      std::printf("%s\n", coemo::harness::summary_to_json(summary).c_str());
      return 0;
    }
    if (plot->parsed()) {
      const std::string dir = plot_opts.out.empty() ? "runs" : plot_opts.out;
      coemo::harness::plot_run_dir(dir);
      std::printf("plots written to %s\n", dir.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::printf("%s\n", app.help().c_str());
  return 0;
}
