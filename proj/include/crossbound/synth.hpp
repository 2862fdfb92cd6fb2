#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

namespace crossbound {

// Everything the generator needs to plant a two-list corpus with known
// structure. Generation is a pure function of these values: the same params
// always produce byte-identical archives (mt19937_64 with modulo draws, no
// platform-defined distributions).
struct SynthParams {
  std::uint64_t seed = 1;
  std::map<std::string, int> participants_per_role = {
      {"project_leader", 1}, {"administrator", 2}, {"developer", 4}, {"user", 8}};
  int discussions_per_list = 8;
  int parallel_pairs = 2;
  int planted_cross = 1;
  double quote_rate = 0.6;
  double quote_noise = 0.0;  // probability a quoted line gets truncated
  double message_rate = 4.0; // mean messages per discussion
  int doc_revisions = 6;
  int impl_revisions = 12;
  double credit_rate = 0.4;  // probability a revision credits someone
  double hint_rate = 0.5;    // probability a quote gets an "X wrote:" line
  double malformed_rate = 0.0;

  void validate() const;  // throws std::invalid_argument on infeasible values

  static SynthParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SynthOutput {
  std::filesystem::path dir;
  std::filesystem::path config_path;
  std::filesystem::path ground_truth_path;
  int n_messages = 0;  // well-formed messages across both lists
};

// Writes two mbox archives, two revision logs, a roster, a ready-to-run
// config, and ground_truth.json into out_dir.
SynthOutput generate_corpus(const SynthParams& params, const std::filesystem::path& out_dir);

}  // namespace crossbound
