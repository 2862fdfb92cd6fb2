#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crossbound/config.hpp"
#include "crossbound/pipeline.hpp"
#include "crossbound/synth.hpp"

namespace {

using crossbound::AnalysisConfig;

int load_config_and_run(const std::string& config_path, const std::string& out_override,
                        int (*run)(const AnalysisConfig&, const std::set<std::string>&),
                        const std::set<std::string>& formats) {
  AnalysisConfig config;
  try {
    config = AnalysisConfig::load(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return crossbound::kExitInput;
  }
  if (!out_override.empty()) config.output_dir = out_override;
  return run(config, formats);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mailing-list and revision-log analysis of design discussions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string formats_arg;

  CLI::App* ingest = app.add_subcommand("ingest", "parse archives into the canonical store");
  ingest->add_option("--config", config_path, "analysis config file")->required();
  ingest->add_option("--out", out_override, "override the configured output directory");

  CLI::App* analyze = app.add_subcommand("analyze", "compute the metrics bundle from the store");
  analyze->add_option("--config", config_path, "analysis config file")->required();
  analyze->add_option("--out", out_override, "override the configured output directory");

  CLI::App* report = app.add_subcommand("report", "render tables, timeline, and graphs");
  report->add_option("--config", config_path, "analysis config file")->required();
  report->add_option("--out", out_override, "override the configured output directory");
  report->add_option("--format", formats_arg, "comma-separated subset of csv,json,dot");

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string params_path;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic two-list corpus");
  synth->add_option("--seed", seed, "generator seed")->each([&](const std::string&) {
    seed_given = true;
  });
  synth->add_option("--params", params_path, "generator parameter file");
  synth->add_option("--out", synth_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : crossbound::kExitInput;
  }

  if (app.got_subcommand("ingest")) {
    return load_config_and_run(
        config_path, out_override,
        [](const AnalysisConfig& c, const std::set<std::string>&) {
          return crossbound::cmd_ingest(c, std::cout);
        },
        {});
  }
  if (app.got_subcommand("analyze")) {
    return load_config_and_run(
        config_path, out_override,
        [](const AnalysisConfig& c, const std::set<std::string>&) {
          return crossbound::cmd_analyze(c, std::cout);
        },
        {});
  }
  if (app.got_subcommand("report")) {
    std::set<std::string> formats;
    std::stringstream ss(formats_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) formats.insert(item);
    }
    return load_config_and_run(
        config_path, out_override,
        [](const AnalysisConfig& c, const std::set<std::string>& f) {
          return crossbound::cmd_report(c, f, std::cout);
        },
        formats);
  }
  if (app.got_subcommand("synth")) {
    crossbound::SynthParams params;
    try {
      if (!params_path.empty()) {
        std::ifstream in(params_path);
        if (!in) {
          std::cerr << "error: cannot open params file: " << params_path << "\n";
          return crossbound::kExitInput;
        }
        params = crossbound::SynthParams::from_json(nlohmann::json::parse(in));
      }
      if (seed_given) params.seed = seed;
      crossbound::SynthOutput out = crossbound::generate_corpus(params, synth_out);
      std::cout << "synth: " << out.n_messages << " messages written to " << out.dir.string()
                << "\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return crossbound::kExitInput;
    }
    return crossbound::kExitOk;
  }
  return crossbound::kExitInput;
}
