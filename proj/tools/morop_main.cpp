#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "morop/errors.hpp"
#include "morop/io.hpp"
#include "morop/pipeline.hpp"
#include "morop/robustness.hpp"

namespace {

int exit_code_for(const std::string& code) {
  if (code == "no-feasible-solution") return 4;
  if (code == "model-failure" || code == "bemt-no-convergence" ||
      code == "polar-out-of-range" || code == "zero-range-objective")
    return 3;
  return 2;  // config-error, schema-mismatch, empty-archive, ...
}

int report_error(const std::string& code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  std::cout << j.dump(2) << std::endl;
  return exit_code_for(code);
}

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  unsigned threads = 0;
  std::string out_dir;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration JSON")
        ->required()
        ->envname("MOROP_CONFIG");
    seed_opt = cmd->add_option("--seed", seed, "base random seed")
                   ->envname("MOROP_SEED");
    samples_opt =
        cmd->add_option("--samples", samples, "LHS samples per solution")
            ->envname("MOROP_SAMPLES");
    threads_opt = cmd->add_option("--threads", threads, "worker thread cap")
                      ->envname("MOROP_THREADS");
    out_opt = cmd->add_option("--out", out_dir, "output directory")
                  ->envname("MOROP_OUT");
  }

  morop::pipeline::RunConfig load() const {
    auto cfg = morop::pipeline::RunConfig::from_file(config_path);
    if (seed_opt->count()) {
      cfg.seed = seed;
      cfg.ga.seed = seed;
    }
    if (samples_opt->count()) cfg.samples = samples;
    if (threads_opt->count()) cfg.threads = threads;
    if (out_opt->count()) cfg.out_dir = out_dir;
    return cfg;
  }
};

int run_and_write(const morop::pipeline::RunConfig& cfg,
                  const std::string& archive_override) {
  morop::pipeline::RunReport report =
      archive_override.empty()
          ? morop::pipeline::run_pipeline(cfg)
          : morop::pipeline::analyze_archive(archive_override, cfg);
  morop::pipeline::write_outputs(report, cfg);
  std::ifstream summary(std::filesystem::path(cfg.out_dir) / "summary.json");
  std::cout << summary.rdbuf();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective robust optimization toolkit"};
  app.require_subcommand(1);

  CLI::App* run_cmd =
      app.add_subcommand("run", "optimize, then rate robustness");
  CommonFlags run_flags;
  run_flags.attach(run_cmd);

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "robustness stages over an existing archive CSV");
  CommonFlags analyze_flags;
  analyze_flags.attach(analyze_cmd);
  std::string archive_path;
  analyze_cmd->add_option("--archive", archive_path, "archive CSV (id, x1..xn)")
      ->required()
      ->envname("MOROP_ARCHIVE");

  CLI::App* scen_cmd =
      app.add_subcommand("scenarios", "scenario table helpers");
  scen_cmd->require_subcommand(1);
  CLI::App* bin_cmd = scen_cmd->add_subcommand(
      "bin-normal", "discretize a normal DEP into value,probability rows");
  double bn_mean = 0.0, bn_sigma = 1.0, bn_lo = 0.0, bn_hi = 0.0;
  std::size_t bn_count = 9;
  std::string bn_method = "pdf";
  bin_cmd->add_option("--mean", bn_mean)->required();
  bin_cmd->add_option("--sigma", bn_sigma)->required();
  bin_cmd->add_option("--lo", bn_lo)->required();
  bin_cmd->add_option("--hi", bn_hi)->required();
  bin_cmd->add_option("--count", bn_count);
  bin_cmd->add_option("--method", bn_method)
      ->check(CLI::IsMember({"pdf", "mass"}));

  CLI::App* report_cmd = app.add_subcommand(
      "report", "re-derive summary.json from a run's CSV outputs");
  std::string report_dir;
  report_cmd->add_option("--out", report_dir, "output directory of a past run")
      ->required()
      ->envname("MOROP_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("config-error", e.what());
  }

  try {
    if (*run_cmd) return run_and_write(run_flags.load(), "");
    if (*analyze_cmd) return run_and_write(analyze_flags.load(), archive_path);
    if (*bin_cmd) {
      auto method = bn_method == "mass" ? morop::BinMethod::Mass
                                        : morop::BinMethod::Pdf;
      auto h = morop::bin_normal_probabilities(
          bn_mean, bn_sigma, bn_lo, bn_hi, bn_count, method);
      double step =
          bn_count > 1 ? (bn_hi - bn_lo) / static_cast<double>(bn_count - 1)
                       : 0.0;
      std::cout << "value,probability\n";
      for (std::size_t k = 0; k < h.size(); ++k)
        std::cout << morop::io::format_double(bn_lo +
                                              step * static_cast<double>(k))
                  << ',' << morop::io::format_double(h[k]) << '\n';
      return 0;
    }
    if (*report_cmd) {
      std::cout << morop::pipeline::rederive_summary(report_dir);
      return 0;
    }
  } catch (const morop::Error& e) {
    return report_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return report_error("config-error", e.what());
  }
  return 0;
}
