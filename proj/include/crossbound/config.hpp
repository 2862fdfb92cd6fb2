#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossbound/metrics.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusConfig {
  std::string name;
  std::vector<std::string> keywords;
  Timestamp date_from = 0;
  Timestamp date_to = 0;
};

struct ListConfig {
  std::string list_id;
  std::string orientation;  // "user" or "developer"
  std::vector<std::filesystem::path> archives;
};

struct RevLogConfig {
  std::filesystem::path path;
  std::optional<Space> space;
};

struct Thresholds {
  int quote_min_chars = 20;
  int quote_min_tokens = 3;
  bool quote_fuzzy = true;
  double quote_fuzzy_overlap = 0.9;
  std::optional<double> subject_fuzzy_jaccard;  // absent = exact subject match
  double rd_threshold = 0.0;
  int rd_min_cell = 5;
  int fallback_window_days = 14;
};

struct AnalysisConfig {
  std::vector<CorpusConfig> corpora;
  std::vector<ListConfig> lists;  // exactly two
  std::filesystem::path roster_path;
  std::optional<std::filesystem::path> stage_lexicon_path;
  std::optional<std::filesystem::path> stage_overrides_path;
  std::vector<RevLogConfig> revision_logs;
  std::vector<std::string> credit_patterns;
  std::optional<std::string> champion;
  Thresholds thresholds;
  std::filesystem::path output_dir;

  // Relative paths in the file resolve against the config's directory.
  static AnalysisConfig load(const std::filesystem::path& path);
};

StageLexicon load_stage_lexicon(const std::filesystem::path& path);
std::map<std::string, std::string> load_stage_overrides(const std::filesystem::path& path);

}  // namespace crossbound
