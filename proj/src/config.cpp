#include "crossbound/config.hpp"

#include <fstream>

#include <json.hpp>

#include "crossbound/datetime.hpp"

namespace crossbound {

namespace {

using nlohmann::json;

Timestamp parse_config_date(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number_integer()) return v.get<Timestamp>();
  auto t = parse_iso8601(v.get<std::string>());
  if (!t) throw ConfigError(std::string("bad timestamp for ") + key);
  return *t;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_absolute()) return path;
  return base / path;
}

}  // namespace

AnalysisConfig AnalysisConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const std::filesystem::path base = path.parent_path();

  AnalysisConfig cfg;
  try {
    for (const auto& c : j.at("corpora")) {
      CorpusConfig corpus;
      corpus.name = c.at("name").get<std::string>();
      for (const auto& kw : c.at("keywords")) corpus.keywords.push_back(kw.get<std::string>());
      corpus.date_from = parse_config_date(c, "date_from");
      corpus.date_to = parse_config_date(c, "date_to");
      if (corpus.date_from > corpus.date_to) {
        throw ConfigError("corpus " + corpus.name + ": date_from is after date_to");
      }
      if (corpus.keywords.empty()) {
        throw ConfigError("corpus " + corpus.name + ": empty keyword set");
      }
      cfg.corpora.push_back(std::move(corpus));
    }
    for (const auto& l : j.at("lists")) {
      ListConfig list;
      list.list_id = l.at("list_id").get<std::string>();
      list.orientation = l.value("orientation", "");
      for (const auto& a : l.at("archives")) {
        list.archives.push_back(resolve(base, a.get<std::string>()));
      }
      cfg.lists.push_back(std::move(list));
    }
    cfg.roster_path = resolve(base, j.at("roster").get<std::string>());
    if (j.contains("stage_lexicon") && !j["stage_lexicon"].is_null()) {
      cfg.stage_lexicon_path = resolve(base, j["stage_lexicon"].get<std::string>());
    }
    if (j.contains("stage_overrides") && !j["stage_overrides"].is_null()) {
      cfg.stage_overrides_path = resolve(base, j["stage_overrides"].get<std::string>());
    }
    if (j.contains("revision_logs")) {
      for (const auto& r : j["revision_logs"]) {
        RevLogConfig rl;
        rl.path = resolve(base, r.at("path").get<std::string>());
        if (r.contains("space") && !r["space"].is_null()) {
          rl.space = space_from_string(r["space"].get<std::string>());
        }
        cfg.revision_logs.push_back(std::move(rl));
      }
    }
    if (j.contains("credit_patterns")) {
      for (const auto& p : j["credit_patterns"]) cfg.credit_patterns.push_back(p.get<std::string>());
    }
    if (j.contains("champion") && !j["champion"].is_null()) {
      cfg.champion = j["champion"].get<std::string>();
    }
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      Thresholds& th = cfg.thresholds;
      th.quote_min_chars = t.value("quote_min_chars", th.quote_min_chars);
      th.quote_min_tokens = t.value("quote_min_tokens", th.quote_min_tokens);
      th.quote_fuzzy = t.value("quote_fuzzy", th.quote_fuzzy);
      th.quote_fuzzy_overlap = t.value("quote_fuzzy_overlap", th.quote_fuzzy_overlap);
      if (t.contains("subject_fuzzy_jaccard") && !t["subject_fuzzy_jaccard"].is_null()) {
        th.subject_fuzzy_jaccard = t["subject_fuzzy_jaccard"].get<double>();
      }
      th.rd_threshold = t.value("rd_threshold", th.rd_threshold);
      th.rd_min_cell = t.value("rd_min_cell", th.rd_min_cell);
      th.fallback_window_days = t.value("fallback_window_days", th.fallback_window_days);
    }
    cfg.output_dir = resolve(base, j.at("output_dir").get<std::string>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }

  if (cfg.lists.size() != 2) throw ConfigError("exactly two lists are required");
  if (cfg.lists[0].list_id == cfg.lists[1].list_id) {
    throw ConfigError("the two lists must have distinct list_ids");
  }
  for (const ListConfig& l : cfg.lists) {
    if (l.orientation != "user" && l.orientation != "developer") {
      throw ConfigError("list " + l.list_id + ": orientation must be 'user' or 'developer'");
    }
  }
  if (cfg.lists[0].orientation == cfg.lists[1].orientation) {
    throw ConfigError("one list must be user-oriented and the other developer-oriented");
  }
  if (cfg.corpora.empty()) throw ConfigError("at least one corpus is required");
  const Thresholds& th = cfg.thresholds;
  if (th.quote_min_chars < 0 || th.quote_min_tokens < 0 || th.fallback_window_days < 0 ||
      th.rd_min_cell < 0 || th.rd_threshold < 0 || th.quote_fuzzy_overlap <= 0 ||
      th.quote_fuzzy_overlap > 1 ||
      (th.subject_fuzzy_jaccard && (*th.subject_fuzzy_jaccard <= 0 || *th.subject_fuzzy_jaccard > 1))) {
    throw ConfigError("threshold out of range");
  }
  return cfg;
}

StageLexicon load_stage_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stage lexicon: " + path.string());
  json j = json::parse(in);
  StageLexicon lex;
  for (const auto& item : j) {
    std::vector<std::string> keywords;
    for (const auto& kw : item.at("keywords")) keywords.push_back(kw.get<std::string>());
    lex.stages.emplace_back(item.at("stage").get<std::string>(), std::move(keywords));
  }
  return lex;
}

std::map<std::string, std::string> load_stage_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stage overrides: " + path.string());
  json j = json::parse(in);
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

}  // namespace crossbound
