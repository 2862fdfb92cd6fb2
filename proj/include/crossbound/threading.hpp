#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crossbound/types.hpp"

namespace crossbound {

// Strips reply/forward markers and bracketed list tags from the front,
// collapses whitespace, lowercases. Idempotent.
std::string normalize_subject(const std::string& subject_raw);

struct ThreadingOptions {
  int fallback_window_days = 14;  // subject-fallback join window
};

struct ThreadingResult {
  std::vector<Discussion> discussions;
  std::vector<Diagnostic> diagnostics;
};

// Groups the selection's messages into discussions: reply headers first,
// then a same-subject fallback within the time window. Deterministic under
// input permutation; reference cycles are broken at the oldest edge.
ThreadingResult build_discussions(const CorpusSelection& selection,
                                  const std::vector<Message>& all_messages,
                                  const ThreadingOptions& options = {});

std::pair<Timestamp, Timestamp> discussion_interval(const Discussion& d);

}  // namespace crossbound
