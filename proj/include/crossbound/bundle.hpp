#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crossbound/config.hpp"
#include "crossbound/identity.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

// Everything cmd_analyze computes for one corpus, as one JSON object. The
// same schema is produced independently by the synthetic-corpus oracle, so
// the two can be compared field by field.
nlohmann::json compute_corpus_metrics(const CorpusConfig& corpus_cfg,
                                      const std::vector<ListConfig>& lists,
                                      const CorpusSelection& selection,
                                      const std::vector<Discussion>& discussions,
                                      const std::vector<Message>& all_messages,
                                      const std::vector<RevisionRecord>& revisions,
                                      const Roster& roster, const Thresholds& thresholds,
                                      const std::optional<std::string>& champion,
                                      const StageLexicon& lexicon,
                                      const std::map<std::string, std::string>& overrides);

// Structural + numeric comparison: integers and strings exact, reals within
// rel_tol relative. On mismatch, *why describes the first differing path.
bool compare_json(const nlohmann::json& a, const nlohmann::json& b, double rel_tol,
                  std::string* why);

int round_percent(std::int64_t numerator, std::int64_t denominator);  // half away from zero
std::string format_double(double v);  // shortest round-trip decimal

}  // namespace crossbound
